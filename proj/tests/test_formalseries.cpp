#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>
#include <vector>

#include "fgq/fgq.hpp"
#include "helpers.hpp"

using namespace fgq;

namespace {

RKElement element(const RootDatum& rd, std::map<Weight, long long> terms) {
  RKElement x;
  x.datum = rd;
  x.terms = std::move(terms);
  return x;
}

// coefficient t -> t+1 on the nonnegative cone of T1, 0 elsewhere
FormalSeries t1StaircaseSeries(const RootDatum& t1) {
  FormalSeries s;
  s.datum = t1;
  s.coefficient = [](const Weight& w) { return w[0] >= 0 ? w[0] + 1LL : 0LL; };
  s.certificate = SupportCertificate{{zeroWeight(1)}, {Weight({1})}};
  return s;
}

}  // namespace

TEST_CASE("deltaSeries", "[formalseries]") {
  const RootDatum a1 = buildRootDatum("A1");
  const Weight lambda({2});
  const FormalSeries d = deltaSeries(a1, lambda);
  CHECK(pair(d, element(a1, {{lambda, 1}})) == 1);
  CHECK(pair(d, element(a1, {{Weight({3}), 1}})) == 0);
  CHECK(truncate(d, Rational(2)) ==
        std::map<Weight, long long>{{Weight({0}), 0}, {Weight({1}), 0}, {Weight({2}), 1}});
  CHECK(d.finiteSupport == std::set<Weight>{lambda});
  CHECK_THROWS_MATCHES(deltaSeries(a1, Weight({-1})), Error, KindIs(errs::NotDominant));
}

TEST_CASE("pair", "[formalseries]") {
  const RootDatum a1 = buildRootDatum("A1");
  const Weight lambda({1});
  CHECK(pair(deltaSeries(a1, lambda), element(a1, {{lambda, 5}})) == 5);
  CHECK(pair(deltaSeries(a1, lambda), element(a1, {})) == 0);

  const FormalSeries sym = formalQuantisationSeries(su2C2Model());
  CHECK(pair(sym, element(a1, {{Weight({2}), 1}})) == 1);
  CHECK(pair(sym, element(a1, {{Weight({0}), 2}, {Weight({5}), -3}})) == 2 - 3);

  RKElement wrongDatum = element(buildRootDatum("T1"), {{Weight({0}), 1}});
  CHECK_THROWS_MATCHES(pair(sym, wrongDatum), Error, KindIs(errs::DatumMismatch));
}

TEST_CASE("pair is bilinear", "[formalseries]") {
  const RootDatum t1 = buildRootDatum("T1");
  std::mt19937 rng(808);
  std::uniform_int_distribution<int> coeff(-3, 3);
  const auto window = dominantWeightsUpTo(t1, Rational(4));
  for (int trial = 0; trial < 10; ++trial) {
    RKElement x = element(t1, {}), y = element(t1, {});
    for (const Weight& w : window) {
      addTerm(x.terms, w, coeff(rng));
      addTerm(y.terms, w, coeff(rng));
    }
    const FormalSeries s1 = t1StaircaseSeries(t1);
    const FormalSeries s2 = deltaSeries(t1, Weight({2}));
    RKElement sum = x;
    for (const auto& [w, m] : y.terms) addTerm(sum.terms, w, m);
    CHECK(pair(s1, sum) == pair(s1, x) + pair(s1, y));
    CHECK(pair(add(s1, s2), x) == pair(s1, x) + pair(s2, x));
    CHECK(pair(scale(-7, s1), x) == -7 * pair(s1, x));
  }
}

TEST_CASE("delta pairing reproduces the identity matrix", "[formalseries]") {
  for (const char* label : {"A1", "A2", "T1", "T2", "A1xA1"}) {
    const RootDatum rd = buildRootDatum(label);
    const auto window = dominantWeightsUpTo(rd, Rational(5));
    for (const Weight& lambda : window) {
      const FormalSeries d = deltaSeries(rd, lambda);
      for (const Weight& mu : window) {
        INFO(label << " " << toString(lambda) << " vs " << toString(mu));
        CHECK(pair(d, element(rd, {{mu, 1}})) == (lambda == mu ? 1 : 0));
      }
    }
  }
}

TEST_CASE("truncate", "[formalseries]") {
  const RootDatum t1 = buildRootDatum("T1");
  CHECK(truncate(deltaSeries(t1, zeroWeight(1)), Rational(0)) ==
        std::map<Weight, long long>{{Weight({0}), 1}});

  // zeros inside the window are part of the answer
  const FormalSeries stair = t1StaircaseSeries(t1);
  CHECK(truncate(stair, Rational(4)) ==
        std::map<Weight, long long>{{Weight({-2}), 0},
                                    {Weight({-1}), 0},
                                    {Weight({0}), 1},
                                    {Weight({1}), 2},
                                    {Weight({2}), 3}});

  CHECK(equalUpTo(stair, stair, Rational(9)));
  const FormalSeries shifted = add(stair, deltaSeries(t1, Weight({3})));
  CHECK(equalUpTo(stair, shifted, Rational(8)));       // [3] has normSq 9
  CHECK_FALSE(equalUpTo(stair, shifted, Rational(9)));

  CHECK_THROWS_MATCHES(equalUpTo(stair, deltaSeries(buildRootDatum("A1"), Weight({0})), Rational(1)),
                       Error, KindIs(errs::DatumMismatch));
}

TEST_CASE("truncate is additive", "[formalseries]") {
  const RootDatum t2 = buildRootDatum("T2");
  const FormalSeries s1 = deltaSeries(t2, Weight({1, 0}));
  const FormalSeries s2 = finiteSeries(
      t2, {{Weight({1, 0}), 4}, {Weight({-1, 1}), -2}, {Weight({0, 0}), 1}});
  const auto lhs = truncate(add(s1, s2), Rational(3));
  auto rhs = truncate(s1, Rational(3));
  for (auto& [w, m] : rhs) m += truncate(s2, Rational(3)).at(w);
  CHECK(lhs == rhs);
}

TEST_CASE("add and scale", "[formalseries]") {
  const RootDatum a1 = buildRootDatum("A1");
  const Weight lambda({1});
  const FormalSeries d = deltaSeries(a1, lambda);
  CHECK(pair(add(d, d), element(a1, {{lambda, 1}})) == 2);
  CHECK(pair(scale(-1, d), element(a1, {{lambda, 1}})) == -1);

  const FormalSeries zero = scale(0, d);
  for (const Weight& w : dominantWeightsUpTo(a1, Rational(6))) CHECK(zero.coefficient(w) == 0);
  CHECK(zero.finiteSupport == std::set<Weight>{});

  // certificates survive the group operations
  CHECK(add(d, deltaSeries(a1, Weight({3}))).certificate.has_value());
  CHECK(scale(4, d).finiteSupport == std::set<Weight>{lambda});
}

TEST_CASE("finiteSeries", "[formalseries]") {
  const RootDatum t1 = buildRootDatum("T1");
  const FormalSeries s = finiteSeries(t1, {{Weight({2}), 3}, {Weight({-1}), 0}, {Weight({0}), -2}});
  CHECK(s.coefficient(Weight({2})) == 3);
  CHECK(s.coefficient(Weight({0})) == -2);
  CHECK(s.coefficient(Weight({-1})) == 0);
  CHECK(s.coefficient(Weight({7})) == 0);
  CHECK(s.finiteSupport == std::set<Weight>{Weight({0}), Weight({2})});
  REQUIRE(s.certificate.has_value());
  CHECK(s.certificate->cone.empty());

  CHECK_THROWS_MATCHES(finiteSeries(buildRootDatum("A1"), {{Weight({-2}), 1}}), Error,
                       KindIs(errs::NotDominant));
}

TEST_CASE("zeroSeries", "[formalseries]") {
  const RootDatum a2 = buildRootDatum("A2");
  const FormalSeries z = zeroSeries(a2);
  for (const Weight& w : dominantWeightsUpTo(a2, Rational(4))) CHECK(z.coefficient(w) == 0);
  CHECK(z.finiteSupport == std::set<Weight>{});
  CHECK(pair(z, element(a2, {{Weight({1, 1}), 9}})) == 0);
}
