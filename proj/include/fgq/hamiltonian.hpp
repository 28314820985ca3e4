#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fgq/errors.hpp"
#include "fgq/formalseries.hpp"
#include "fgq/khom.hpp"
#include "fgq/linalg.hpp"
#include "fgq/repring.hpp"
#include "fgq/rootdata.hpp"

// Combinatorial models of prequantised Hamiltonian spaces: linear spaces
// with listed torus weights, coadjoint orbits with a sign, and induced
// spaces over a group model. Quantisations come with two independent
// computation paths throughout (Sym-enumeration vs. reduction oracles) so
// the identities checked downstream are real tests, not tautologies.

namespace fgq {

struct LinearModel {
  RootDatum datum;
  std::vector<Weight> repWeights;               // T-weights of V, with multiplicity
  std::optional<RatVec> halfSpaceFunctional;    // xi with <xi, alpha> > 0 for all weights
  std::optional<std::function<long long(const Weight&)>> degreeBound;
  bool propernessAsserted = false;
  std::string tag;
};

struct CoadjointOrbitModel {
  RootDatum datum;
  Weight weight;
  char sign = '+';  // '-' means minus the standard symplectic form
};

struct InducedModel {
  GroupModel model;
  std::variant<LinearModel, CoadjointOrbitModel> inner;
};

inline Rational xiDot(const RatVec& xi, const Weight& w) {
  Rational acc(0);
  for (int i = 0; i < w.rank(); ++i) acc += xi[static_cast<std::size_t>(i)] * Rational(w[i]);
  return acc;
}

inline LinearModel makeLinearModel(RootDatum datum, std::vector<Weight> repWeights,
                                   std::optional<RatVec> xi = std::nullopt,
                                   std::optional<std::function<long long(const Weight&)>> bound =
                                       std::nullopt,
                                   bool propernessAsserted = false, std::string tag = {}) {
  for (const Weight& w : repWeights) requireRank(datum, w, "makeLinearModel");
  if (!datum.isTorus()) {
    // V must be a K-representation: the weight multiset is Weyl-closed
    std::map<Weight, int> counts;
    for (const Weight& w : repWeights) ++counts[w];
    for (std::size_t i = 0; i < datum.simpleRoots.size(); ++i)
      for (const auto& [w, c] : counts) {
        auto it = counts.find(simpleReflect(datum, static_cast<int>(i), w));
        if (it == counts.end() || it->second != c)
          fail(errs::InvalidModel, "makeLinearModel: repWeights not closed under the Weyl group");
      }
  }
  if (xi) {
    if (xi->size() != static_cast<std::size_t>(datum.rank))
      fail(errs::DimensionMismatch, "makeLinearModel: halfSpaceFunctional rank");
    for (const Weight& w : repWeights)
      if (xiDot(*xi, w) <= Rational(0))
        fail(errs::InvalidModel, "makeLinearModel: halfSpaceFunctional not positive on " + toString(w));
  }
  LinearModel m;
  m.datum = std::move(datum);
  m.repWeights = std::move(repWeights);
  m.halfSpaceFunctional = std::move(xi);
  m.degreeBound = std::move(bound);
  m.propernessAsserted = propernessAsserted;
  m.tag = std::move(tag);
  return m;
}

inline CoadjointOrbitModel makeCoadjointModel(RootDatum datum, Weight weight, char sign) {
  requireDominant(datum, weight, "makeCoadjointModel");
  if (sign != '+' && sign != '-') fail(errs::InvalidModel, "makeCoadjointModel: sign");
  return CoadjointOrbitModel{std::move(datum), std::move(weight), sign};
}

inline InducedModel makeInducedModel(GroupModel model,
                                     std::variant<LinearModel, CoadjointOrbitModel> inner) {
  const RootDatum& innerDatum = std::holds_alternative<LinearModel>(inner)
                                    ? std::get<LinearModel>(inner).datum
                                    : std::get<CoadjointOrbitModel>(inner).datum;
  if (!sameDatum(model.compact, innerDatum))
    fail(errs::DatumMismatch, "makeInducedModel: inner datum vs compact datum");
  return InducedModel{std::move(model), std::move(inner)};
}

namespace detail {

// Degree bound actually in force: an explicit one, else the half-space
// derivation (a monomial of weight lambda has total degree at most
// <xi, lambda> / min_j <xi, alpha_j>).
inline std::optional<std::function<long long(const Weight&)>> effectiveDegreeBound(
    const LinearModel& m) {
  if (m.degreeBound) return m.degreeBound;
  if (!m.halfSpaceFunctional) return std::nullopt;
  if (m.repWeights.empty())
    return std::function<long long(const Weight&)>([](const Weight&) { return 0LL; });
  const RatVec xi = *m.halfSpaceFunctional;
  Rational minStep = xiDot(xi, m.repWeights.front());
  for (const Weight& w : m.repWeights) minStep = std::min(minStep, xiDot(xi, w));
  return std::function<long long(const Weight&)>([xi, minStep](const Weight& lambda) {
    const Rational q = xiDot(xi, lambda) / minStep;
    return q < Rational(0) ? 0LL : ratFloor(q);
  });
}

inline std::function<long long(const Weight&)> certifiedDegreeBound(const LinearModel& m) {
  if (!m.halfSpaceFunctional && !m.propernessAsserted)
    fail(errs::PropernessUncertified, "model " + (m.tag.empty() ? m.datum.label : m.tag));
  auto bound = effectiveDegreeBound(m);
  if (!bound)
    fail(errs::DegreeBoundMissing, "model " + (m.tag.empty() ? m.datum.label : m.tag));
  return *bound;
}

// Monomial characters of Sym^0 V .. Sym^maxDeg V as raw weight counts.
inline std::vector<std::map<Weight, long long>> symLayers(const RootDatum& rd,
                                                          const std::vector<Weight>& weights,
                                                          long long maxDeg) {
  std::vector<std::map<Weight, long long>> table(static_cast<std::size_t>(maxDeg + 1));
  table[0][zeroWeight(rd.rank)] = 1;
  for (const Weight& alpha : weights)
    for (long long d = 1; d <= maxDeg; ++d)
      for (const auto& [w, c] : table[static_cast<std::size_t>(d - 1)])
        table[static_cast<std::size_t>(d)][w + alpha] += c;
  return table;
}

}  // namespace detail

// mult(pi_lambda, Sym V): enumerate monomial characters up to the certified
// degree bound and decompose each symmetric layer by highest-weight stripping.
inline long long formalQuantisationCoefficient(const LinearModel& m, const Weight& lambda) {
  requireDominant(m.datum, lambda, "formalQuantisationCoefficient");
  const auto bound = detail::certifiedDegreeBound(m);
  const long long maxDeg = bound(lambda);
  auto layers = detail::symLayers(m.datum, m.repWeights, maxDeg);
  long long total = 0;
  for (long long d = 0; d <= maxDeg; ++d) {
    Character ch;
    ch.datum = m.datum;
    ch.terms = layers[static_cast<std::size_t>(d)];
    total += termAt(decomposeCharacter(m.datum, ch).terms, lambda);
  }
  return total;
}

inline FormalSeries formalQuantisationSeries(const LinearModel& m) {
  detail::certifiedDegreeBound(m);  // surface certification errors eagerly
  FormalSeries s;
  s.datum = m.datum;
  const LinearModel model = m;
  s.coefficient = [model](const Weight& lambda) {
    return formalQuantisationCoefficient(model, lambda);
  };
  SupportCertificate cert;
  cert.base.push_back(zeroWeight(m.datum.rank));
  for (const Weight& w : m.repWeights)
    if (std::find(cert.cone.begin(), cert.cone.end(), w) == cert.cone.end()) cert.cone.push_back(w);
  s.certificate = std::move(cert);
  if (m.repWeights.empty()) s.finiteSupport = std::set<Weight>{zeroWeight(m.datum.rank)};
  return s;
}

// #{m in N^n : A m = lambda} by memoized recursion graded along an interior
// functional of the column cone. Independent of the Sym-enumeration path.
inline long long vectorPartition(const std::vector<std::vector<long long>>& a,
                                 const std::vector<long long>& lambda) {
  const std::size_t k = a.size();
  if (lambda.size() != k) fail(errs::DimensionMismatch, "vectorPartition");
  std::size_t n = 0;
  for (const auto& row : a) {
    if (n == 0) n = row.size();
    if (row.size() != n) fail(errs::DimensionMismatch, "vectorPartition: ragged matrix");
  }
  if (n == 0) {
    for (long long v : lambda)
      if (v != 0) return 0;
    return 1;
  }
  std::vector<std::vector<long long>> cols(n, std::vector<long long>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j][i] = a[i][j];
  auto xi = findInteriorFunctional(cols);
  if (!xi) fail(errs::NotPointedCone, "vectorPartition: columns span no open half-space");
  auto grade = [&xi](const std::vector<long long>& v) {
    Rational acc(0);
    for (std::size_t i = 0; i < v.size(); ++i) acc += (*xi)[i] * Rational(v[i]);
    return acc;
  };
  std::map<std::pair<std::size_t, std::vector<long long>>, long long> memo;
  std::function<long long(std::size_t, std::vector<long long>)> rec =
      [&](std::size_t j, std::vector<long long> target) -> long long {
    const Rational g = grade(target);
    if (g < Rational(0)) return 0;
    if (j == n) {
      for (long long v : target)
        if (v != 0) return 0;
      return 1;
    }
    auto key = std::make_pair(j, target);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const long long kmax = ratFloor(g / grade(cols[j]));
    long long acc = 0;
    std::vector<long long> rest = target;
    for (long long t = 0; t <= kmax; ++t) {
      acc += rec(j + 1, rest);
      for (std::size_t i = 0; i < k; ++i) rest[i] -= cols[j][i];
    }
    memo.emplace(std::move(key), acc);
    return acc;
  };
  return rec(0, lambda);
}

inline long long vectorPartition(const RootDatum& rd, const std::vector<Weight>& columns,
                                 const Weight& lambda) {
  std::vector<std::vector<long long>> a(static_cast<std::size_t>(rd.rank),
                                        std::vector<long long>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (int i = 0; i < rd.rank; ++i) a[static_cast<std::size_t>(i)][j] = columns[j][i];
  std::vector<long long> rhs(lambda.coords.begin(), lambda.coords.end());
  return vectorPartition(a, rhs);
}

// Borel-Weil convention: the plus orbit quantises to pi_mu, the minus orbit
// to its contragredient.
inline FormalSeries coadjointQuantisationSeries(const CoadjointOrbitModel& m) {
  const Weight target = m.sign == '+' ? m.weight : dualWeight(m.datum, m.weight);
  return deltaSeries(m.datum, target);
}

namespace detail {

inline FormalSeries materializeWindow(FormalSeries s, const Rational& radius) {
  const auto cache = truncate(s, radius);
  const RootDatum datum = s.datum;
  auto oracle = s.coefficient;
  s.coefficient = [cache, oracle, datum, radius](const Weight& w) {
    if (normSq(datum, w) <= radius) return termAt(cache, w);
    return oracle(w);
  };
  return s;
}

inline const LinearModel* innerLinear(const InducedModel& im) {
  return std::get_if<LinearModel>(&im.inner);
}

}  // namespace detail

// Q_G(M) = ((DInd)^*)^{-1}(Q_K(N)): lift the inner quantisation series to a
// K-homology class over the group model. First of the two [Q,R]=0 paths.
inline KHomologyClass induceQuantisation(const InducedModel& im, const Rational& radius) {
  FormalSeries s = detail::innerLinear(im)
                       ? formalQuantisationSeries(*detail::innerLinear(im))
                       : coadjointQuantisationSeries(std::get<CoadjointOrbitModel>(im.inner));
  return liftSeries(im.model, detail::materializeWindow(std::move(s), radius));
}

// Second [Q,R]=0 path: coefficients are reduced-space values. Torus-linear
// models use the vector partition count; nonabelian linear models use the
// Weyl-alternated partition sum over the orbit of lambda + rho; coadjoint
// models reduce to a point or nothing.
inline KHomologyClass induceFormalQuantisation(const InducedModel& im, const Rational& radius) {
  const RootDatum rd = im.model.compact;
  FormalSeries s;
  s.datum = rd;
  if (const LinearModel* lm = detail::innerLinear(im)) {
    const LinearModel model = *lm;
    SupportCertificate cert;
    cert.base.push_back(zeroWeight(rd.rank));
    for (const Weight& w : model.repWeights)
      if (std::find(cert.cone.begin(), cert.cone.end(), w) == cert.cone.end())
        cert.cone.push_back(w);
    s.certificate = std::move(cert);
    if (model.repWeights.empty()) s.finiteSupport = std::set<Weight>{zeroWeight(rd.rank)};
    if (rd.isTorus()) {
      s.coefficient = [rd, model](const Weight& lambda) {
        requireDominant(rd, lambda, "induceFormalQuantisation");
        return vectorPartition(rd, model.repWeights, lambda);
      };
    } else {
      s.coefficient = [rd, model](const Weight& lambda) {
        requireDominant(rd, lambda, "induceFormalQuantisation");
        const auto bound = detail::certifiedDegreeBound(model);
        const long long maxDeg = bound(lambda);
        auto layers = detail::symLayers(rd, model.repWeights, maxDeg);
        long long total = 0;
        for (const Weight& nu : weylOrbit(rd, lambda + rd.weylVector)) {
          const int sign = dominate(rd, nu).second;
          const Weight shifted = nu - rd.weylVector;
          for (long long d = 0; d <= maxDeg; ++d)
            total += sign * termAt(layers[static_cast<std::size_t>(d)], shifted);
        }
        return total;
      };
    }
  } else {
    const CoadjointOrbitModel cm = std::get<CoadjointOrbitModel>(im.inner);
    const Weight target = cm.sign == '+' ? cm.weight : dualWeight(rd, cm.weight);
    s.coefficient = [target](const Weight& lambda) { return lambda == target ? 1LL : 0LL; };
    s.finiteSupport = std::set<Weight>{target};
    s.certificate = SupportCertificate{{target}, {}};
  }
  return liftSeries(im.model, detail::materializeWindow(std::move(s), radius));
}

// R^G_lambda: the multiplicity of [lambda]^*.
inline long long reductionMultiplicity(const KHomologyClass& c, const Weight& lambda) {
  requireDominant(c.model.compact, lambda, "reductionMultiplicity");
  return c.series.coefficient(lambda);
}

// Invariant quantisation of M x O_lambda^-: extract the invariant part of
// the product through the tensor engine. The mu-window normSq <= normSq(lambda)
// suffices since an invariant in pi_mu (x) pi_{dual lambda} forces mu and
// lambda into the same norm sphere.
inline long long shiftedInvariantQuantisation(const LinearModel& m, const Weight& lambda) {
  requireDominant(m.datum, lambda, "shiftedInvariantQuantisation");
  detail::certifiedDegreeBound(m);
  const Weight nu0 = dualWeight(m.datum, lambda);
  const Weight zero = zeroWeight(m.datum.rank);
  long long acc = 0;
  for (const Weight& mu : dominantWeightsUpTo(m.datum, normSq(m.datum, lambda))) {
    const long long inv = termAt(tensorDecompose(m.datum, mu, nu0).terms, zero);
    if (inv != 0) acc += formalQuantisationCoefficient(m, mu) * inv;
  }
  return acc;
}

inline FormalSeries semiFormalQuantisation(const LinearModel& m) {
  FormalSeries s = formalQuantisationSeries(m);  // reuse certification + certificate
  const LinearModel model = m;
  s.coefficient = [model](const Weight& lambda) {
    return shiftedInvariantQuantisation(model, lambda);
  };
  return s;
}

inline LinearModel productModel(const LinearModel& m1, const LinearModel& m2) {
  RootDatum datum = productDatum(m1.datum, m2.datum);
  const int r1 = m1.datum.rank, r2 = m2.datum.rank;
  std::vector<Weight> weights;
  for (const Weight& w : m1.repWeights) weights.push_back(concatWeights(w, zeroWeight(r2)));
  for (const Weight& w : m2.repWeights) weights.push_back(concatWeights(zeroWeight(r1), w));
  std::optional<RatVec> xi;
  if (m1.halfSpaceFunctional && m2.halfSpaceFunctional) {
    RatVec v = *m1.halfSpaceFunctional;
    v.insert(v.end(), m2.halfSpaceFunctional->begin(), m2.halfSpaceFunctional->end());
    xi = std::move(v);
  }
  std::optional<std::function<long long(const Weight&)>> bound;
  bool asserted = false;
  if (!xi) {
    auto b1 = detail::effectiveDegreeBound(m1);
    auto b2 = detail::effectiveDegreeBound(m2);
    const bool cert1 = m1.halfSpaceFunctional || m1.propernessAsserted;
    const bool cert2 = m2.halfSpaceFunctional || m2.propernessAsserted;
    if (b1 && b2 && cert1 && cert2) {
      auto f1 = *b1, f2 = *b2;
      bound = std::function<long long(const Weight&)>([f1, f2, r1, r2](const Weight& w) {
        return f1(sliceWeight(w, 0, r1)) + f2(sliceWeight(w, r1, r2));
      });
      asserted = true;
    }
  }
  std::string tag = (m1.tag.empty() ? m1.datum.label : m1.tag) + "x" +
                    (m2.tag.empty() ? m2.datum.label : m2.tag);
  return makeLinearModel(std::move(datum), std::move(weights), std::move(xi), std::move(bound),
                         asserted, std::move(tag));
}

// Built-in desk models.

inline LinearModel su2C2Model() {
  RootDatum a1 = buildRootDatum("A1");
  // Sym^m(C^2) is irreducible, so degree m = lambda exactly
  auto bound = std::function<long long(const Weight&)>([](const Weight& w) {
    return static_cast<long long>(w[0]);
  });
  return makeLinearModel(a1, {Weight({1}), Weight({-1})}, std::nullopt, bound, true, "su2_c2");
}

inline LinearModel t1DoubleModel() {
  return makeLinearModel(buildRootDatum("T1"), {Weight({1}), Weight({1})}, RatVec{Rational(1)},
                         std::nullopt, false, "t1_11");
}

inline LinearModel t2IdentityModel() {
  return makeLinearModel(buildRootDatum("T2"), {Weight({1, 0}), Weight({0, 1})},
                         RatVec{Rational(1), Rational(1)}, std::nullopt, false, "t2_identity");
}

}  // namespace fgq
