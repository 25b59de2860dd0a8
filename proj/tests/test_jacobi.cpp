#include <gtest/gtest.h>

#include <knotfermion/jacobi.hpp>

using namespace knotfermion;

TEST(JacobiP, LowDegrees) {
  Rational al(5, 3), be(-2, 7);
  EXPECT_EQ(jacobi_P<Rational>(0, al, be), APoly<Rational>(Rational(1)));
  EXPECT_TRUE(jacobi_P<Rational>(-1, al, be).zero());
  // (alpha+1) - (alpha+beta+2) a
  APoly<Rational> expect = APoly<Rational>(al + 1) - APoly<Rational>::monomial(al + be + 2, 1);
  EXPECT_EQ(jacobi_P<Rational>(1, al, be), expect);
}

TEST(JacobiP, MatchesRodriguesRecurrence) {
  // standard three-term recurrence in z = 1 - 2a for P_n^{(alpha,beta)}
  Rational al(3, 2), be(1);
  APoly<Rational> z = APoly<Rational>(Rational(1)) - APoly<Rational>::monomial(2, 1);
  for (int n = 2; n <= 12; ++n) {
    Rational c = Rational(2 * n) + al + be;
    Rational l = Rational(2 * n) * (Rational(n) + al + be) * (c - 2);
    APoly<Rational> lhs = jacobi_P<Rational>(n, al, be).scaled(l);
    APoly<Rational> rhs = ((z.scaled(c * (c - 1) * (c - 2)) + APoly<Rational>((c - 1) * (al * al - be * be))) * jacobi_P<Rational>(n - 1, al, be)) -
                          jacobi_P<Rational>(n - 2, al, be).scaled(Rational(2) * (Rational(n - 1) + al) * (Rational(n - 1) + be) * c);
    EXPECT_EQ(lhs, rhs) << n;
  }
}

TEST(JacobiJ, FirstValues) {
  Rational s(7, 4);
  EXPECT_EQ(jacobi_J<Rational>(0, s), APoly<Rational>(Rational(1)));
  // rho b (1 - a) - (1 + a)
  APoly<Rational> a = APoly<Rational>::var(1), one(Rational(1));
  EXPECT_EQ(jacobi_J<Rational>(1, s), (one - a).scaled(s) - (one + a));
}

TEST(ThreeTerm, ClosesAtSecondIndex) {
  Rational s(-5, 7);
  APoly<Rational> a = APoly<Rational>::var(1), one(Rational(1));
  APoly<Rational> rhs = -((a + one + (a - one).scaled(s / Rational(2))) * jacobi_J<Rational>(1, s)) - a * jacobi_J<Rational>(0, s);
  EXPECT_EQ(jacobi_J<Rational>(2, s), rhs);
}

TEST(ThreeTerm, VanishesAtNumericParameters) {
  for (const Rational& s : {Rational(3, 2), Rational(-5, 7), Rational(11)})
    for (int k = 1; k <= 30; ++k) EXPECT_TRUE(three_term_residual<Rational>(k, s).zero()) << k << " " << s.short_str();
}

TEST(ThreeTerm, VanishesSymbolically) {
  for (int k = 1; k <= 30; ++k) EXPECT_TRUE(three_term_residual<LaurentPoly>(k, sigma_symbol()).zero()) << k;
}

TEST(GeneratingFunction, VanishesForSmallM) {
  for (int m = 1; m <= 12; ++m) {
    KnotParams K(2, 3);
    for (const Rational& x : {Rational(1), Rational(7, 3), Rational(m) * K.b}) EXPECT_TRUE(genfun_coefficient<Rational>(m, x).zero()) << m;
  }
}

TEST(GeneratingFunction, MatchesExponentialSeriesForJm1) {
  // [w^m] exp(sum (a^i - 1) w^i rho b / i) = (-1)^m (1 - a) (rho b / m) J_{m-1} at u = 0
  const Rational rho(5, 3), b(3, 2);
  auto E = jacobi_exp_coefficients(8, rho, b, 1);
  LaurentPoly a = LaurentPoly::var(1), one(1);
  for (int m = 1; m <= 8; ++m) {
    LaurentPoly rhs = (one - a) * jacobi_J<Rational>(m - 1, rho * b).scaled(rho * b / Rational(m));
    EXPECT_EQ(E[static_cast<std::size_t>(m)].coeff(0), m % 2 ? -rhs : rhs) << m;
  }
}

TEST(QHypergeometric, SingleBox) {
  KnotParams K(2, 3);
  EXPECT_TRUE(is_zero(qphi_identity_residual(1, K, Rational(3, 4), 6)));
}

TEST(QHypergeometric, VanishesForSmallM) {
  KnotParams K(2, 3);
  for (int m = 1; m <= 6; ++m)
    for (const Rational& rho : {Rational(1), Rational(2), Rational(5, 2)}) EXPECT_TRUE(is_zero(qphi_identity_residual(m, K, rho, 6))) << m << " " << rho.short_str();
}

TEST(QHypergeometric, LowestOrderIsClassicalGeneratingFunction) {
  KnotParams K(3, 2);
  for (int m = 1; m <= 6; ++m) EXPECT_TRUE(is_zero(qphi_identity_residual(m, K, Rational(7, 5), 1))) << m;
}

TEST(Hypergeometric, FirstOrderRelationIsTrivialAtMOne) {
  auto [r1, r2] = hyper2f1_jacobi_residuals<Rational>(1, Rational(3, 2));
  EXPECT_TRUE(r1.zero());
  EXPECT_TRUE(r2.zero());
}

TEST(Hypergeometric, RelationsToJacobi) {
  for (int m = 1; m <= 8; ++m) {
    for (const Rational& s : {Rational(3, 2), Rational(4)}) {
      auto [r1, r2] = hyper2f1_jacobi_residuals<Rational>(m, s);
      EXPECT_TRUE(r1.zero()) << m;
      EXPECT_TRUE(r2.zero()) << m;
    }
    auto [q1, q2] = hyper2f1_jacobi_residuals<LaurentPoly>(m, sigma_symbol());
    EXPECT_TRUE(q1.zero() && q2.zero()) << m;
  }
}

TEST(Hypergeometric, DerivativeOfFirstRelation) {
  // d/da [(-1)^m (1-a) sigma J_{m-1}/m] = (-1)^{m+1} sigma (J_{m-1} + J_{m-2})
  Rational s(9, 4);
  APoly<Rational> a = APoly<Rational>::var(1), one(Rational(1));
  for (int m = 1; m <= 8; ++m) {
    APoly<Rational> f = (one - a) * jacobi_J<Rational>(m - 1, s).scaled(s / Rational(m));
    APoly<Rational> g = (jacobi_J<Rational>(m - 1, s) + jacobi_J<Rational>(m - 2, s)).scaled(-s);
    EXPECT_EQ(f.derivative(), g) << m;
  }
}

class GDecomp : public ::testing::TestWithParam<int> {};

TEST_P(GDecomp, FitsWithStructuralProperties) {
  KnotParams K(2, 3);
  GDecomposition g = g_decomposition(GetParam(), K);
  EXPECT_GE(g.degree, 0);
  EXPECT_TRUE(g.holdout_exact);
  EXPECT_TRUE(g.m0_values_ok);
  EXPECT_TRUE(g.diagonal_double_zero);
  EXPECT_EQ(g.holdout.size(), 5u);
}

INSTANTIATE_TEST_SUITE_P(Orders, GDecomp, ::testing::Values(0, 1));

TEST(GDecomp, GenusZeroValue) {
  KnotParams K(3, 2);
  GDecomposition g = g_decomposition(0, K);
  ASSERT_TRUE(g.passed());
  LaurentPoly a = LaurentPoly::var(1), one(1);
  EXPECT_EQ(g.G1.at({0, 0}), RationalFunction((one - a).scaled(K.b)));
  EXPECT_TRUE(g.G2.empty());
}
