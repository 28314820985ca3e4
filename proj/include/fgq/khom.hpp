#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fgq/branching.hpp"
#include "fgq/errors.hpp"
#include "fgq/formalseries.hpp"
#include "fgq/repring.hpp"
#include "fgq/rootdata.hpp"

// Generator-level algebra of K_d(C*_rG) and K^d(C*_rG): Dirac induction as a
// degree-tagged relabeling, the pullback identification of dual generators,
// external products with additive degrees, Dirac restriction through
// witnessed branching, the module action over the compact ring, and
// discrete-series sign bookkeeping. No operator algebra exists here; the
// assembly map is represented only through its action on labels.

namespace fgq {

struct GroupModel {
  std::string name;
  RootDatum compact;  // maximal compact K
  int d = 0;          // dim G/K, a degree tag
  std::function<bool(const Weight&)> stronglyElliptic;  // may be empty
};

inline bool sameModel(const GroupModel& a, const GroupModel& b) {
  return a.d == b.d && sameDatum(a.compact, b.compact);
}

inline GroupModel compactGroupModel(const RootDatum& rd) {
  return GroupModel{rd.label, rd, 0, nullptr};
}

inline GroupModel productGroupModel(const GroupModel& a, const GroupModel& b) {
  return GroupModel{a.name + "x" + b.name, productDatum(a.compact, b.compact), a.d + b.d, nullptr};
}

// Class in K_d(C*_rG): labels [lambda] = DInd[pi^K_lambda].
struct KTheoryClass {
  GroupModel model;
  RKElement element;
};

// Class in K^d(C*_rG): labels [lambda]^*, a formal series over the compact.
struct KHomologyClass {
  GroupModel model;
  FormalSeries series;
};

// Dirac induction R(K) -> K_d(C*_rG): a label-preserving relabeling.
inline KTheoryClass diracInduction(const GroupModel& model, const RKElement& x) {
  if (!sameDatum(model.compact, x.datum)) fail(errs::DatumMismatch, "diracInduction");
  return KTheoryClass{model, x};
}

// Pullback along Dirac induction: [lambda]^* -> [pi^K_lambda]^*.
inline FormalSeries diracPullback(const KHomologyClass& c) { return c.series; }

// Inverse of the pullback: a series of compact duals as a K-homology class.
inline KHomologyClass liftSeries(const GroupModel& model, const FormalSeries& s) {
  if (!sameDatum(model.compact, s.datum)) fail(errs::DatumMismatch, "liftSeries");
  return KHomologyClass{model, s};
}

// [lambda1]^* x [lambda2]^* = [(lambda1, lambda2)]^*, degrees adding.
inline KHomologyClass externalProduct(const KHomologyClass& c1, const KHomologyClass& c2) {
  GroupModel model = productGroupModel(c1.model, c2.model);
  FormalSeries s;
  s.datum = model.compact;
  const int r1 = c1.model.compact.rank;
  auto f1 = c1.series.coefficient, f2 = c2.series.coefficient;
  const int rank = model.compact.rank;
  s.coefficient = [f1, f2, r1, rank](const Weight& w) {
    Weight a = sliceWeight(w, 0, r1), b = sliceWeight(w, r1, rank - r1);
    const long long x = f1(a);
    return x == 0 ? 0 : x * f2(b);
  };
  if (c1.series.finiteSupport && c2.series.finiteSupport) {
    std::set<Weight> supp;
    for (const Weight& a : *c1.series.finiteSupport)
      for (const Weight& b : *c2.series.finiteSupport) supp.insert(concatWeights(a, b));
    s.finiteSupport = std::move(supp);
  }
  if (c1.series.certificate && c2.series.certificate) {
    SupportCertificate cert;
    const Weight z1 = zeroWeight(r1), z2 = zeroWeight(rank - r1);
    for (const Weight& a : c1.series.certificate->base)
      for (const Weight& b : c2.series.certificate->base) cert.base.push_back(concatWeights(a, b));
    for (const Weight& g : c1.series.certificate->cone) cert.cone.push_back(concatWeights(g, z2));
    for (const Weight& g : c2.series.certificate->cone) cert.cone.push_back(concatWeights(z1, g));
    s.certificate = std::move(cert);
  }
  return KHomologyClass{model, s};
}

// DRes^G_{G'}: conjugate Res^K_{K'} by the Dirac-induction pullbacks. The
// series must be witness-certified along e; the result carries G''s degree.
inline KHomologyClass diracRestriction(const KHomologyClass& cG, const GroupModel& modelGp,
                                       const Embedding& e, const Rational& radius) {
  if (!sameDatum(e.target, cG.model.compact) || !sameDatum(e.source, modelGp.compact))
    fail(errs::DatumMismatch, "diracRestriction");
  return liftSeries(modelGp, branchSeries(e, diracPullback(cG), radius));
}

// a . b = DRes^{GxG}_{Delta(G)}(a^* x b), computed by the finite convolution
// sum: the coefficient at nu only sees lambda2 with
// normSq(lambda2) <= 2 normSq(lambda1) + 2 normSq(nu), so no witness is
// needed. The windowed diagonal-restriction path is moduleActionViaRestriction.
inline KHomologyClass moduleAction(const KTheoryClass& a, const KHomologyClass& b) {
  if (!sameModel(a.model, b.model)) fail(errs::DatumMismatch, "moduleAction");
  const RootDatum rd = b.model.compact;
  const RKElement aElt = a.element;
  auto bCoeff = b.series.coefficient;
  const auto bSupport = b.series.finiteSupport;

  FormalSeries s;
  s.datum = rd;
  s.coefficient = [rd, aElt, bCoeff, bSupport](const Weight& nu) {
    long long acc = 0;
    for (const auto& [l1, c1] : aElt.terms) {
      const Rational window = Rational(2) * normSq(rd, l1) + Rational(2) * normSq(rd, nu);
      auto addFrom = [&](const Weight& l2, long long c2) {
        if (c2 == 0 || normSq(rd, l2) > window) return;
        acc += c1 * c2 * termAt(tensorDecompose(rd, l1, l2).terms, nu);
      };
      if (bSupport) {
        for (const Weight& l2 : *bSupport) addFrom(l2, bCoeff(l2));
      } else {
        for (const Weight& l2 : dominantWeightsUpTo(rd, window)) addFrom(l2, bCoeff(l2));
      }
    }
    return acc;
  };
  if (b.series.finiteSupport) {
    std::set<Weight> supp;
    for (const auto& [l1, c1] : aElt.terms)
      for (const Weight& l2 : *b.series.finiteSupport)
        for (const auto& [nu, m] : tensorDecompose(rd, l1, l2).terms) supp.insert(nu);
    s.finiteSupport = std::move(supp);
  }
  if (b.series.certificate) {
    // supp(a.b) lies in (cert base + weights of the pi_{lambda1}) + same cone
    SupportCertificate cert;
    cert.cone = b.series.certificate->cone;
    for (const auto& [l1, c1] : aElt.terms)
      for (const auto& [w, m] : weightMultiplicities(rd, l1).terms)
        for (const Weight& f : b.series.certificate->base) {
          Weight shifted = f + w;
          if (std::find(cert.base.begin(), cert.base.end(), shifted) == cert.base.end())
            cert.base.push_back(shifted);
        }
    s.certificate = std::move(cert);
  }
  return KHomologyClass{b.model, s};
}

// A K-homology class may act on the left only through its K-theory part,
// which requires finite support.
inline KTheoryClass toKTheoryClass(const KHomologyClass& a) {
  if (!a.series.finiteSupport)
    fail(errs::InfiniteA, "toKTheoryClass: series is not finitely supported");
  RKElement x;
  x.datum = a.model.compact;
  for (const Weight& w : *a.series.finiteSupport) addTerm(x.terms, w, a.series.coefficient(w));
  return KTheoryClass{a.model, x};
}

inline KHomologyClass moduleAction(const KHomologyClass& a, const KHomologyClass& b) {
  return moduleAction(toKTheoryClass(a), b);
}

// The defining diagram of the module action, runnable when a^* x b is
// witness-certified (finite b, or torus data): lift of the diagonal
// restriction of the external product. Used as the independent path against
// moduleAction's convolution.
inline KHomologyClass moduleActionViaRestriction(const KTheoryClass& a, const KHomologyClass& b,
                                                 const Rational& radius) {
  if (!sameModel(a.model, b.model)) fail(errs::DatumMismatch, "moduleActionViaRestriction");
  const RootDatum rd = b.model.compact;
  std::map<Weight, long long> dualTerms;
  for (const auto& [lambda, c] : a.element.terms) dualTerms[lambda] = c;
  KHomologyClass aStar{a.model, finiteSeries(rd, dualTerms)};
  const Embedding diag = diagonalEmbedding(rd);
  KHomologyClass prod = externalProduct(aStar, b);
  return KHomologyClass{b.model, branchSeries(diag, prod.series, radius)};
}

// Discrete-series generator: [pi^G_lambda] = (-1)^{d/2} [lambda], returned
// as the sign together with that multiple of the dual generator.
inline std::pair<int, KHomologyClass> discreteSeriesClass(const GroupModel& model,
                                                          const Weight& lambda) {
  if (model.d % 2 != 0)
    fail(errs::OddDimension, "discreteSeriesClass: d = " + std::to_string(model.d));
  if (!model.stronglyElliptic || !model.stronglyElliptic(lambda))
    fail(errs::NotStronglyElliptic, "discreteSeriesClass: " + toString(lambda));
  const int sign = (model.d / 2) % 2 == 0 ? 1 : -1;
  return {sign, KHomologyClass{model, scale(sign, deltaSeries(model.compact, lambda))}};
}

}  // namespace fgq
