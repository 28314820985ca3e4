#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "fgq/errors.hpp"
#include "fgq/repring.hpp"
#include "fgq/rootdata.hpp"

// The abelian group Hom_Z(R(K), Z) of formal series over dominant weights.
// Elements are coefficient oracles, never materialized sums; all consumers go
// through truncate/pair, and equality is only ever asserted up to a radius.

namespace fgq {

// Evidence that the support of a series lies in base + N-span(cone): a finite
// set of base points plus cone generators. An empty cone certifies finite
// support. Restriction witnesses are derived from this data per embedding; a
// series without a certificate cannot be restricted at all.
struct SupportCertificate {
  std::vector<Weight> base;
  std::vector<Weight> cone;
};

struct FormalSeries {
  RootDatum datum;
  std::function<long long(const Weight&)> coefficient;  // total on dominant weights
  std::optional<std::set<Weight>> finiteSupport;
  std::optional<SupportCertificate> certificate;
};

inline FormalSeries deltaSeries(const RootDatum& rd, const Weight& lambda) {
  requireDominant(rd, lambda, "deltaSeries");
  FormalSeries s;
  s.datum = rd;
  s.coefficient = [lambda](const Weight& w) { return w == lambda ? 1LL : 0LL; };
  s.finiteSupport = std::set<Weight>{lambda};
  s.certificate = SupportCertificate{{lambda}, {}};
  return s;
}

inline FormalSeries zeroSeries(const RootDatum& rd) {
  FormalSeries s;
  s.datum = rd;
  s.coefficient = [](const Weight&) { return 0LL; };
  s.finiteSupport = std::set<Weight>{};
  s.certificate = SupportCertificate{{}, {}};
  return s;
}

// Finite series given by an explicit coefficient map (keys dominant).
inline FormalSeries finiteSeries(const RootDatum& rd, const std::map<Weight, long long>& terms) {
  std::map<Weight, long long> clean;
  std::set<Weight> supp;
  std::vector<Weight> base;
  for (const auto& [w, c] : terms) {
    requireDominant(rd, w, "finiteSeries");
    if (c == 0) continue;
    clean.emplace(w, c);
    supp.insert(w);
    base.push_back(w);
  }
  FormalSeries s;
  s.datum = rd;
  s.coefficient = [clean](const Weight& w) { return termAt(clean, w); };
  s.finiteSupport = std::move(supp);
  s.certificate = SupportCertificate{std::move(base), {}};
  return s;
}

// The UCT pairing <s, x> = sum_lambda x(lambda) * s(lambda), a finite sum
// over the support of x.
inline long long pair(const FormalSeries& s, const RKElement& x) {
  if (!sameDatum(s.datum, x.datum)) fail(errs::DatumMismatch, "pair");
  long long acc = 0;
  for (const auto& [lambda, c] : x.terms) acc += c * s.coefficient(lambda);
  return acc;
}

// Coefficient map on the full window dominantWeightsUpTo(radius), zeros
// included: the window itself is part of the answer.
inline std::map<Weight, long long> truncate(const FormalSeries& s, const Rational& radius) {
  std::map<Weight, long long> out;
  for (const Weight& w : dominantWeightsUpTo(s.datum, radius)) out[w] = s.coefficient(w);
  return out;
}

inline bool equalUpTo(const FormalSeries& a, const FormalSeries& b, const Rational& radius) {
  if (!sameDatum(a.datum, b.datum)) fail(errs::DatumMismatch, "equalUpTo");
  return truncate(a, radius) == truncate(b, radius);
}

namespace detail {

inline std::optional<SupportCertificate> combineCertificates(
    const std::optional<SupportCertificate>& a, const std::optional<SupportCertificate>& b) {
  if (!a || !b) return std::nullopt;
  SupportCertificate c = *a;
  for (const Weight& f : b->base)
    if (std::find(c.base.begin(), c.base.end(), f) == c.base.end()) c.base.push_back(f);
  for (const Weight& g : b->cone)
    if (std::find(c.cone.begin(), c.cone.end(), g) == c.cone.end()) c.cone.push_back(g);
  return c;
}

}  // namespace detail

inline FormalSeries add(const FormalSeries& a, const FormalSeries& b) {
  if (!sameDatum(a.datum, b.datum)) fail(errs::DatumMismatch, "add");
  FormalSeries s;
  s.datum = a.datum;
  auto ca = a.coefficient, cb = b.coefficient;
  s.coefficient = [ca, cb](const Weight& w) { return ca(w) + cb(w); };
  if (a.finiteSupport && b.finiteSupport) {
    std::set<Weight> supp = *a.finiteSupport;
    supp.insert(b.finiteSupport->begin(), b.finiteSupport->end());
    s.finiteSupport = std::move(supp);
  }
  s.certificate = detail::combineCertificates(a.certificate, b.certificate);
  return s;
}

inline FormalSeries scale(long long n, const FormalSeries& a) {
  if (n == 0) return zeroSeries(a.datum);
  FormalSeries s;
  s.datum = a.datum;
  auto ca = a.coefficient;
  s.coefficient = [n, ca](const Weight& w) { return n * ca(w); };
  s.finiteSupport = a.finiteSupport;
  s.certificate = a.certificate;
  return s;
}

}  // namespace fgq
