#include <gtest/gtest.h>

#include <knotfermion/ratfunc.hpp>
#include <knotfermion/series.hpp>
#include <knotfermion/suites.hpp>

using namespace knotfermion;

namespace {

Series<Rational> poly_series(std::vector<Rational> c, int cap) {
  Series<Rational> s(0, cap);
  for (std::size_t i = 0; i < c.size(); ++i) s.set(static_cast<int>(i), c[i]);
  return s;
}

}  // namespace

TEST(Rational, CanonicalFormAndInverse) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(-3, -6).short_str(), "1/2");
  EXPECT_EQ(Rational(6, 3).short_str(), "2");
  EXPECT_EQ(Rational(3, 7).inverse(), Rational(7, 3));
  EXPECT_THROW(Rational(0).inverse(), DivisionByZero);
}

TEST(LaurentPoly, MonomialUnitsInvert) {
  LaurentPoly m = LaurentPoly::monomial(Rational(3, 2), -4);
  EXPECT_EQ(m * unit_inverse(m), LaurentPoly(1));
  EXPECT_THROW(unit_inverse(LaurentPoly::var(1) + LaurentPoly(1)), NonInvertibleLeadingTerm);
}

TEST(LaurentPoly, SubstitutionOfPowers) {
  LaurentPoly p = LaurentPoly::var(2) - LaurentPoly::var(-1);
  EXPECT_EQ(p.subs_power(3), LaurentPoly::var(6) - LaurentPoly::var(-3));
  EXPECT_EQ(p.subs_power(-1), LaurentPoly::var(-2) - LaurentPoly::var(1));
}

TEST(RationalFunction, ReducesCommonFactors) {
  LaurentPoly x = LaurentPoly::var(1), one(1);
  RationalFunction f(x * x - one, x - one);
  EXPECT_EQ(f, RationalFunction(x + one));
  EXPECT_TRUE(f.is_laurent());
  EXPECT_EQ(RationalFunction(x, x * x).evaluate_at(Rational(4)), Rational(1, 4));
}

TEST(ZetaSeries, ZeroArgumentGivesZero) { EXPECT_TRUE(zeta_series(Rational(0), 6).known_zero()); }

TEST(ZetaSeries, UnitArgumentTaylorCoefficients) {
  Series<Rational> z = zeta_series(Rational(1), 4);
  EXPECT_EQ(z.coeff(0), Rational(0));
  EXPECT_EQ(z.coeff(1), Rational(1));
  EXPECT_EQ(z.coeff(2), Rational(0));
  EXPECT_EQ(z.coeff(3), Rational(1, 24));
  EXPECT_THROW(z.coeff(4), PrecisionError);
}

TEST(ZetaSeries, OddInArgument) { EXPECT_EQ(zeta_series(Rational(-3, 2), 9), -zeta_series(Rational(3, 2), 9)); }

TEST(SeriesInverse, OfOneIsOne) {
  Series<Rational> one = Series<Rational>::constant(1, 6);
  EXPECT_EQ(series_inverse(one), one);
}

TEST(SeriesInverse, OfZetaHasSimplePole) {
  Series<Rational> inv = series_inverse(zeta_series(Rational(1), 4));
  EXPECT_EQ(inv.valuation(), -1);
  EXPECT_EQ(inv.coeff(-1), Rational(1));
  EXPECT_EQ(inv.coeff(0), Rational(0));
  EXPECT_EQ(inv.coeff(1), Rational(-1, 24));
}

TEST(SeriesInverse, ValuationTwoGivesDoublePole) {
  Series<Rational> s(0, 8);
  s.set(2, Rational(3));
  s.set(3, Rational(-1, 2));
  s.set(5, Rational(7));
  Series<Rational> inv = series_inverse(s);
  EXPECT_EQ(inv.valuation(), -2);
  EXPECT_TRUE(equal_to_common_cap(inv * s, Series<Rational>::constant(1, kExactCap)));
}

TEST(BinomialSeries, ZeroExponentIsOne) {
  Series<Rational> b = binomial_series(Rational(5), Rational(0), 5);
  EXPECT_TRUE(equal_to_common_cap(b, Series<Rational>::constant(1, 5)));
}

TEST(BinomialSeries, ExponentOneIsLinear) {
  LaurentPoly Ahat = LaurentPoly::var(1);
  Series<LaurentPoly> b = binomial_series(Ahat, Rational(1), 5);
  EXPECT_EQ(b.coeff(0), LaurentPoly(1));
  EXPECT_EQ(b.coeff(1), -Ahat);
  for (int e = 2; e < 5; ++e) EXPECT_TRUE(b.coeff(e).zero());
}

TEST(BinomialSeries, SquareRoot) {
  Series<Rational> b = binomial_series(Rational(1), Rational(1, 2), 3);
  EXPECT_EQ(b.coeff(0), Rational(1));
  EXPECT_EQ(b.coeff(1), Rational(-1, 2));
  EXPECT_EQ(b.coeff(2), Rational(-1, 8));
  // squaring gives 1 - U back
  EXPECT_TRUE(equal_to_common_cap(b * b, poly_series({1, -1}, 3)));
}

TEST(Reversion, IdentityIsFixed) {
  Series<Rational> x = Series<Rational>::monomial(1, 1, 8);
  EXPECT_TRUE(equal_to_common_cap(lagrange_revert(x, 7), x));
}

TEST(Reversion, CatalanNumbers) {
  Series<Rational> s = poly_series({0, 1, 1}, 8);
  Series<Rational> r = lagrange_revert(s, 6);
  std::vector<Rational> expect{0, 1, -1, 2, -5, 14, -42};
  for (int e = 0; e <= 6; ++e) EXPECT_EQ(r.coeff(e), expect[static_cast<std::size_t>(e)]) << "e=" << e;
  EXPECT_TRUE(equal_to_common_cap(series_compose(s, r), Series<Rational>::monomial(1, 1, 7)));
}

TEST(Series, CapIsTrackedThroughProducts) {
  Series<Rational> a = poly_series({1, 2, 3}, 5), b(-1, 4);
  b.set(-1, Rational(1));
  // known through u^4 and u^3 with valuations 0 and -1: the product is known through u^3
  EXPECT_EQ((a * b).cap(), 4);
}

TEST(Series, ExpLogRoundTrip) {
  Series<Rational> x(1, 9);
  for (int e = 1; e < 9; ++e) x.set(e, Rational(e * e - 3, e + 1));
  Series<Rational> one = Series<Rational>::constant(1, 9);
  EXPECT_TRUE(equal_to_common_cap(series_exp(series_log1p(x)) - one, x));
}

class KernelProperties : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(KernelProperties, RandomizedAxiomsAndRoundTrips) {
  CheckReport r = kernel_check(GetParam(), 200);
  for (const Check& c : r.checks) EXPECT_NE(c.status, CheckStatus::fail) << c.name << " " << c.witness.dump();
}

INSTANTIATE_TEST_SUITE_P(Seeds, KernelProperties, ::testing::Values(1u, 2u, 3u));
