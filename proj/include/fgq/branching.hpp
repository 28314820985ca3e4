#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fgq/errors.hpp"
#include "fgq/formalseries.hpp"
#include "fgq/linalg.hpp"
#include "fgq/repring.hpp"
#include "fgq/rootdata.hpp"

// Restriction maps Res^K_{K'} on R(K) and their witness-certified extension
// to formal series. Embeddings are lattice-level data: an integer matrix
// carrying target weight coordinates to source weight coordinates, which is
// exactly the information character restriction needs.

namespace fgq {

struct Embedding {
  RootDatum source;  // K'
  RootDatum target;  // K
  std::vector<std::vector<int>> weightMap;  // source.rank x target.rank
  std::string kind;  // torusInclusion | blockSubgroup | diagonal | factorInclusion
};

inline Weight applyWeightMap(const Embedding& e, const Weight& w) {
  Weight out = zeroWeight(e.source.rank);
  for (int i = 0; i < e.source.rank; ++i) {
    long long acc = 0;
    for (int j = 0; j < e.target.rank; ++j)
      acc += static_cast<long long>(e.weightMap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) * w[j];
    out[i] = static_cast<int>(acc);
  }
  return out;
}

inline Embedding makeEmbedding(RootDatum source, RootDatum target,
                               std::vector<std::vector<int>> weightMap, std::string kind) {
  if (weightMap.size() != static_cast<std::size_t>(source.rank))
    fail(errs::LatticeMismatch, "makeEmbedding: weightMap has " + std::to_string(weightMap.size()) +
                                    " rows, source rank is " + std::to_string(source.rank));
  for (const auto& row : weightMap)
    if (row.size() != static_cast<std::size_t>(target.rank))
      fail(errs::LatticeMismatch, "makeEmbedding: weightMap row length vs target rank " +
                                      std::to_string(target.rank));
  if (kind != "torusInclusion" && kind != "blockSubgroup" && kind != "diagonal" &&
      kind != "factorInclusion")
    fail(errs::InvalidModel, "makeEmbedding: unknown kind " + kind);
  Embedding e{std::move(source), std::move(target), std::move(weightMap), std::move(kind)};
  if (e.kind == "diagonal") {
    if (!sameDatum(e.target, productDatum(e.source, e.source)))
      fail(errs::InvalidModel, "makeEmbedding: diagonal requires target = source x source");
    for (int i = 0; i < e.source.rank; ++i)
      for (int j = 0; j < e.target.rank; ++j) {
        const int expect = (j == i || j == i + e.source.rank) ? 1 : 0;
        if (e.weightMap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != expect)
          fail(errs::InvalidModel, "makeEmbedding: diagonal weightMap must be [I | I]");
      }
  }
  return e;
}

inline Embedding diagonalEmbedding(const RootDatum& rd) {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(rd.rank),
                                  std::vector<int>(static_cast<std::size_t>(2 * rd.rank), 0));
  for (int i = 0; i < rd.rank; ++i) {
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + rd.rank)] = 1;
  }
  return makeEmbedding(rd, productDatum(rd, rd), std::move(m), "diagonal");
}

// Inclusion of the maximal torus T^rank < K: weight lattices coincide in
// fundamental coordinates, so the map is the identity matrix.
inline Embedding maximalTorusEmbedding(const RootDatum& rd) {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(rd.rank),
                                  std::vector<int>(static_cast<std::size_t>(rd.rank), 0));
  for (int i = 0; i < rd.rank; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  return makeEmbedding(buildRootDatum("T" + std::to_string(rd.rank)), rd, std::move(m),
                       "torusInclusion");
}

// Inclusion of one factor of a product, collapsing the other factor's
// coordinates (restriction along K1 -> K1 x K2 at the trivial character).
inline Embedding factorEmbedding(const RootDatum& factor, const RootDatum& product, int offset) {
  std::vector<std::vector<int>> m(static_cast<std::size_t>(factor.rank),
                                  std::vector<int>(static_cast<std::size_t>(product.rank), 0));
  for (int i = 0; i < factor.rank; ++i)
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + offset)] = 1;
  return makeEmbedding(factor, product, std::move(m), "factorInclusion");
}

// e_outer: K' -> K, e_inner: K'' -> K'; the composite restricts K to K''.
inline Embedding composeEmbeddings(const Embedding& innerE, const Embedding& outerE) {
  if (!sameDatum(innerE.target, outerE.source))
    fail(errs::LatticeMismatch, "composeEmbeddings: middle data differ");
  std::vector<std::vector<int>> m(static_cast<std::size_t>(innerE.source.rank),
                                  std::vector<int>(static_cast<std::size_t>(outerE.target.rank), 0));
  for (int i = 0; i < innerE.source.rank; ++i)
    for (int j = 0; j < outerE.target.rank; ++j) {
      long long acc = 0;
      for (int k = 0; k < innerE.target.rank; ++k)
        acc += static_cast<long long>(innerE.weightMap[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]) *
               outerE.weightMap[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<int>(acc);
    }
  return makeEmbedding(innerE.source, outerE.target, std::move(m), "blockSubgroup");
}

// Res^K_{K'} of an irreducible: push the full character through the weight
// map, then decompose over the source.
inline RKElement branch(const Embedding& e, const Weight& lambda) {
  requireDominant(e.target, lambda, "branch");
  Character pushed;
  pushed.datum = e.source;
  for (const auto& [w, m] : weightMultiplicities(e.target, lambda).terms)
    addTerm(pushed.terms, applyWeightMap(e, w), m);
  return decomposeCharacter(e.source, pushed);
}

// Z-linear extension of branch to virtual elements.
inline RKElement branchRK(const Embedding& e, const RKElement& x) {
  if (!sameDatum(e.target, x.datum)) fail(errs::DatumMismatch, "branchRK");
  RKElement out;
  out.datum = e.source;
  for (const auto& [lambda, c] : x.terms)
    for (const auto& [mu, m] : branch(e, lambda).terms) addTerm(out.terms, mu, c * m);
  return out;
}

namespace detail {

inline Rational maxNormSq(const RootDatum& rd, const std::vector<Weight>& ws) {
  Rational m(0);
  for (const Weight& w : ws) m = std::max(m, normSq(rd, w));
  return m;
}

}  // namespace detail

// Witness derived from a support certificate: a radius bound such that every
// coefficient contributing to a restricted weight of normSq <= r lies at
// normSq <= witness(r). Finite certificates cover any embedding. Cone
// certificates cover torus targets (where the contribution at lambda' forces
// an exact monomial equation) provided a functional positive on the mapped
// cone generators exists; nonabelian targets with infinite support admit no
// certificate here, matching the properness hypothesis having no stand-in.
inline std::optional<std::function<Rational(const Rational&)>> tryWitness(const FormalSeries& s,
                                                                          const Embedding& e) {
  if (!sameDatum(s.datum, e.target)) fail(errs::DatumMismatch, "tryWitness");
  if (!s.certificate) return std::nullopt;
  const SupportCertificate cert = *s.certificate;
  const RootDatum target = e.target;
  const RootDatum source = e.source;
  const Rational baseBound = detail::maxNormSq(target, cert.base);
  if (cert.cone.empty())
    return std::function<Rational(const Rational&)>([baseBound](const Rational&) { return baseBound; });
  if (!target.isTorus()) return std::nullopt;

  // eta on the source side, positive on the image of every cone generator
  std::vector<std::vector<long long>> cols;
  for (const Weight& g : cert.cone) {
    Weight img = applyWeightMap(e, g);
    cols.push_back(std::vector<long long>(img.coords.begin(), img.coords.end()));
  }
  auto eta = findInteriorFunctional(cols);
  if (!eta) return std::nullopt;

  // xi = U^T eta as a functional on target weights
  RatVec xi(static_cast<std::size_t>(target.rank), Rational(0));
  for (int j = 0; j < target.rank; ++j)
    for (int i = 0; i < source.rank; ++i)
      xi[static_cast<std::size_t>(j)] +=
          (*eta)[static_cast<std::size_t>(i)] *
          Rational(e.weightMap[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);

  auto dot = [&xi](const Weight& w) {
    Rational acc(0);
    for (int j = 0; j < w.rank(); ++j) acc += xi[static_cast<std::size_t>(j)] * Rational(w[j]);
    return acc;
  };
  Rational minBase(0);
  bool haveBase = false;
  for (const Weight& f : cert.base) {
    const Rational v = dot(f);
    if (!haveBase || v < minBase) minBase = v;
    haveBase = true;
  }
  Rational minCone = dot(cert.cone.front());
  Rational coneBound(0);
  for (const Weight& g : cert.cone) {
    minCone = std::min(minCone, dot(g));
    coneBound = std::max(coneBound, normSq(target, g));
  }

  const RatVec etaVec = *eta;
  return std::function<Rational(const Rational&)>(
      [source, etaVec, minBase, minCone, baseBound, coneBound](const Rational& r) {
        Rational cmax(0);
        bool any = false;
        for (const Weight& lp : dominantWeightsUpTo(source, r)) {
          Rational v(0);
          for (int i = 0; i < lp.rank(); ++i)
            v += etaVec[static_cast<std::size_t>(i)] * Rational(lp[i]);
          if (!any || v > cmax) cmax = v;
          any = true;
        }
        if (!any) return baseBound;
        Rational m = (cmax - minBase) / minCone;  // bound on the total cone coefficient
        if (m < Rational(0)) m = Rational(0);
        return Rational(2) * baseBound + Rational(2) * m * m * coneBound;
      });
}

inline std::function<Rational(const Rational&)> standardWitness(const FormalSeries& s,
                                                                const Embedding& e) {
  auto w = tryWitness(s, e);
  if (!w)
    fail(errs::NoWitnessAvailable,
         "standardWitness: no support certificate covers this embedding");
  return *w;
}

// Res^K_{K'} on formal series, computed on the window normSq <= radius. The
// result is the finite windowed restriction; it refuses to run without a
// witness rather than silently truncating.
inline FormalSeries branchSeries(const Embedding& e, const FormalSeries& s, const Rational& radius) {
  if (!sameDatum(s.datum, e.target)) fail(errs::DatumMismatch, "branchSeries");
  auto witness = tryWitness(s, e);
  if (!witness)
    fail(errs::MissingWitness,
         "branchSeries: series not certified restrictable along this embedding");
  const Rational bound = (*witness)(radius);

  std::map<Weight, long long> acc;
  for (const Weight& w : dominantWeightsUpTo(e.source, radius)) acc[w] = 0;
  auto accumulate = [&](const Weight& lambda, long long c) {
    if (c == 0) return;
    for (const auto& [mu, m] : branch(e, lambda).terms) {
      auto it = acc.find(mu);
      if (it != acc.end()) it->second += c * m;
    }
  };
  if (s.finiteSupport) {
    for (const Weight& lambda : *s.finiteSupport)
      if (normSq(e.target, lambda) <= bound) accumulate(lambda, s.coefficient(lambda));
  } else {
    for (const Weight& lambda : dominantWeightsUpTo(e.target, bound))
      accumulate(lambda, s.coefficient(lambda));
  }
  return finiteSeries(e.source, acc);
}

}  // namespace fgq
