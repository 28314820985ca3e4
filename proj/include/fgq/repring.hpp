#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "fgq/errors.hpp"
#include "fgq/rootdata.hpp"

// Characters and the representation ring R(K): weight multiplicities via the
// Freudenthal recursion, dimensions via the Weyl product formula, tensor
// decomposition via the Klimyk rule, and decomposition of arbitrary
// Weyl-invariant characters by highest-weight stripping. A brute-force
// convolution+stripping tensor path is exposed alongside Klimyk as an
// independent oracle.

namespace fgq {

// Virtual character as a finite monomial map weight -> multiplicity.
struct Character {
  RootDatum datum;
  std::map<Weight, long long> terms;
};

// Element of R(K): finite integer combination of irreducibles, keyed by
// dominant highest weights. Negative multiplicities are allowed.
struct RKElement {
  RootDatum datum;
  std::map<Weight, long long> terms;
};

inline void addTerm(std::map<Weight, long long>& terms, const Weight& w, long long c) {
  if (c == 0) return;
  auto it = terms.find(w);
  if (it == terms.end()) {
    terms.emplace(w, c);
  } else {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

inline long long termAt(const std::map<Weight, long long>& terms, const Weight& w) {
  auto it = terms.find(w);
  return it == terms.end() ? 0 : it->second;
}

namespace detail {

// Dominant weights mu with lambda - mu a nonnegative integer combination of
// simple roots. Contains every dominant weight of the irreducible with
// highest weight lambda (all of which satisfy normSq(mu) <= normSq(lambda)).
inline std::vector<Weight> dominantBelow(const RootDatum& rd, const Weight& lambda) {
  std::vector<Weight> out;
  const Rational r = normSq(rd, lambda);
  for (const Weight& mu : dominantWeightsUpTo(rd, r)) {
    Weight diff = lambda - mu;
    bool torusOk = true;
    for (int i = 0; i < rd.rank; ++i)
      if (!rd.semisimpleCoord[static_cast<std::size_t>(i)] && diff[i] != 0) torusOk = false;
    if (!torusOk) continue;
    if (rd.simpleRoots.empty()) {
      if (diff == zeroWeight(rd.rank)) out.push_back(mu);
      continue;
    }
    // solve diff = sum c_i alpha_i, require c_i integers >= 0
    const std::size_t k = rd.simpleRoots.size();
    RatMat cols(static_cast<std::size_t>(rd.rank), RatVec(k, Rational(0)));
    for (std::size_t j = 0; j < k; ++j)
      for (int i = 0; i < rd.rank; ++i)
        cols[static_cast<std::size_t>(i)][j] = Rational(rd.simpleRoots[j][i]);
    RatVec rhs(static_cast<std::size_t>(rd.rank));
    for (int i = 0; i < rd.rank; ++i) rhs[static_cast<std::size_t>(i)] = Rational(diff[i]);
    auto sol = ratSolve(cols, rhs);
    if (!sol) continue;
    bool good = true;
    for (const Rational& c : *sol)
      if (!isIntegerValued(c) || c < Rational(0)) good = false;
    if (good) out.push_back(mu);
  }
  return out;
}

}  // namespace detail

// Full weight system of the irreducible representation with highest weight
// lambda, computed by the Freudenthal recursion over dominant weights and
// spread over Weyl orbits.
inline Character weightMultiplicities(const RootDatum& rd, const Weight& lambda) {
  requireDominant(rd, lambda, "weightMultiplicities");

  static std::mutex memoMutex;
  static std::map<std::pair<std::string, Weight>, Character> memo;
  const auto key = std::make_pair(datumKey(rd), lambda);
  {
    std::lock_guard<std::mutex> lock(memoMutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }

  std::vector<Weight> candidates = detail::dominantBelow(rd, lambda);
  // References in the recursion go to strictly larger normSq, so process in
  // decreasing order of normSq (lex as a deterministic tie-break).
  std::sort(candidates.begin(), candidates.end(), [&](const Weight& a, const Weight& b) {
    const Rational na = normSq(rd, a), nb = normSq(rd, b);
    if (na != nb) return na > nb;
    return a < b;
  });

  const Rational top = normSq(rd, lambda);
  std::map<Weight, long long> dominantMult;
  for (const Weight& mu : candidates) {
    if (mu == lambda) {
      dominantMult[mu] = 1;
      continue;
    }
    Rational numer(0);
    for (const Weight& alpha : rd.positiveRoots) {
      const Rational alphaSq = normSq(rd, alpha);
      const long long kmax = isqrtBound(Rational(4) * top / alphaSq) + 1;
      for (long long k = 1; k <= kmax; ++k) {
        Weight w = mu + static_cast<int>(k) * alpha;
        auto it = dominantMult.find(dominate(rd, w).first);
        if (it == dominantMult.end() || it->second == 0) continue;
        numer += Rational(2) * Rational(it->second) * innerProduct(rd, w, alpha);
      }
    }
    const Rational denom =
        normSq(rd, lambda + rd.weylVector) - normSq(rd, mu + rd.weylVector);
    const Rational m = numer / denom;
    if (!isIntegerValued(m) || m < Rational(0))
      fail(errs::ParseError, "Freudenthal recursion produced a non-integer multiplicity");
    dominantMult[mu] = ratNum(m);
  }

  Character ch;
  ch.datum = rd;
  for (const auto& [mu, m] : dominantMult) {
    if (m == 0) continue;
    for (const Weight& w : weylOrbit(rd, mu)) ch.terms[w] = m;
  }

  std::lock_guard<std::mutex> lock(memoMutex);
  memo.emplace(key, ch);
  return ch;
}

// Weyl dimension formula; independent of the Freudenthal path.
inline long long dimension(const RootDatum& rd, const Weight& lambda) {
  requireDominant(rd, lambda, "dimension");
  Rational dim(1);
  for (const Weight& alpha : rd.positiveRoots)
    dim *= innerProduct(rd, lambda + rd.weylVector, alpha) / innerProduct(rd, rd.weylVector, alpha);
  if (!isIntegerValued(dim) || dim <= Rational(0))
    fail(errs::ParseError, "Weyl dimension formula produced a non-integer value");
  return ratNum(dim);
}

inline bool isWeylInvariant(const RootDatum& rd, const Character& c) {
  for (std::size_t i = 0; i < rd.simpleRoots.size(); ++i)
    for (const auto& [w, m] : c.terms)
      if (termAt(c.terms, simpleReflect(rd, static_cast<int>(i), w)) != m) return false;
  return true;
}

// Inverse of the character map on the Weyl-invariant subring: repeatedly
// strip the character of the maximal surviving dominant term.
inline RKElement decomposeCharacter(const RootDatum& rd, const Character& c) {
  if (!sameDatum(rd, c.datum)) fail(errs::DatumMismatch, "decomposeCharacter");
  if (!isWeylInvariant(rd, c)) fail(errs::NotWeylInvariant, "decomposeCharacter");
  RKElement out;
  out.datum = rd;
  std::map<Weight, long long> rest = c.terms;
  while (!rest.empty()) {
    auto best = rest.begin();
    Rational bestNorm = normSq(rd, best->first);
    for (auto it = std::next(rest.begin()); it != rest.end(); ++it) {
      const Rational n = normSq(rd, it->first);
      if (n > bestNorm || (n == bestNorm && best->first < it->first)) {
        best = it;
        bestNorm = n;
      }
    }
    const Weight top = dominate(rd, best->first).first;
    const long long coeff = termAt(rest, top);
    if (coeff == 0) fail(errs::NotWeylInvariant, "decomposeCharacter: inconsistent orbit");
    addTerm(out.terms, top, coeff);
    for (const auto& [w, m] : weightMultiplicities(rd, top).terms) addTerm(rest, w, -coeff * m);
  }
  return out;
}

// Klimyk rule: lambda (x) mu = sum over weights nu of pi_mu of
// sign * pi_{straighten(lambda + nu)}.
inline RKElement tensorDecompose(const RootDatum& rd, const Weight& lambda, const Weight& mu) {
  requireDominant(rd, lambda, "tensorDecompose");
  requireDominant(rd, mu, "tensorDecompose");
  // enumerate the smaller character; the result is symmetric either way
  const Weight& big = dimension(rd, lambda) >= dimension(rd, mu) ? lambda : mu;
  const Weight& small = (&big == &lambda) ? mu : lambda;
  RKElement out;
  out.datum = rd;
  for (const auto& [nu, m] : weightMultiplicities(rd, small).terms) {
    auto [rep, sign] = straighten(rd, big + nu);
    if (sign != 0) addTerm(out.terms, rep, sign * m);
  }
  return out;
}

inline Character convolveCharacters(const Character& a, const Character& b) {
  if (!sameDatum(a.datum, b.datum)) fail(errs::DatumMismatch, "convolveCharacters");
  Character out;
  out.datum = a.datum;
  for (const auto& [w1, m1] : a.terms)
    for (const auto& [w2, m2] : b.terms) addTerm(out.terms, w1 + w2, m1 * m2);
  return out;
}

// Brute-force tensor path: pointwise convolution of the two full characters
// followed by highest-weight stripping. Kept as an independent oracle against
// the Klimyk rule.
inline RKElement tensorDecomposeOracle(const RootDatum& rd, const Weight& lambda, const Weight& mu) {
  requireDominant(rd, lambda, "tensorDecomposeOracle");
  requireDominant(rd, mu, "tensorDecomposeOracle");
  return decomposeCharacter(
      rd, convolveCharacters(weightMultiplicities(rd, lambda), weightMultiplicities(rd, mu)));
}

inline Character rkCharacter(const RootDatum& rd, const RKElement& x) {
  if (!sameDatum(rd, x.datum)) fail(errs::DatumMismatch, "rkCharacter");
  Character out;
  out.datum = rd;
  for (const auto& [lambda, c] : x.terms)
    for (const auto& [w, m] : weightMultiplicities(rd, lambda).terms) addTerm(out.terms, w, c * m);
  return out;
}

// Bilinear extension of tensorDecompose to virtual elements.
inline RKElement tensorRK(const RootDatum& rd, const RKElement& x, const RKElement& y) {
  if (!sameDatum(rd, x.datum) || !sameDatum(rd, y.datum)) fail(errs::DatumMismatch, "tensorRK");
  RKElement out;
  out.datum = rd;
  for (const auto& [l1, c1] : x.terms)
    for (const auto& [l2, c2] : y.terms)
      for (const auto& [nu, m] : tensorDecompose(rd, l1, l2).terms)
        addTerm(out.terms, nu, c1 * c2 * m);
  return out;
}

// Relabel each lambda to its contragredient highest weight -w0(lambda).
inline RKElement dualRK(const RootDatum& rd, const RKElement& x) {
  if (!sameDatum(rd, x.datum)) fail(errs::DatumMismatch, "dualRK");
  RKElement out;
  out.datum = rd;
  for (const auto& [lambda, c] : x.terms) addTerm(out.terms, dualWeight(rd, lambda), c);
  return out;
}

}  // namespace fgq
