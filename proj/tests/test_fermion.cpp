#include <gtest/gtest.h>

#include <knotfermion/fermion.hpp>
#include <knotfermion/homfly.hpp>
#include <knotfermion/spectral_curve.hpp>

using namespace knotfermion;

namespace {

USeries lift_scaled(const Series<Rational>& s, const LaurentPoly& c) {
  return s.map([&](const Rational& r) { return c.scaled(r); });
}

}  // namespace

TEST(Correlator, EmptyProductIsOne) { EXPECT_EQ(e_correlator({}, 4), Series<Rational>::constant(1, 4)); }

TEST(Correlator, TildeZeroModeHasZeroVacuumValue) { EXPECT_TRUE(e_correlator({EOp{0, Rational(1), true}}, 5).known_zero()); }

TEST(Correlator, NonTildeZeroModeIsInverseZeta) {
  Series<Rational> v = e_correlator({EOp{0, Rational(2), false}}, 4);
  EXPECT_TRUE(equal_to_common_cap(v, series_inverse(zeta_series(Rational(2), 0, 8))));
}

TEST(Correlator, OneParticleExchangeIsOne) {
  for (auto [z, w] : std::vector<std::pair<Rational, Rational>>{{1, 2}, {Rational(1, 3), Rational(-5, 2)}, {3, 0}}) {
    Series<Rational> v = e_correlator({EOp{1, z, true}, EOp{-1, w, true}}, 5);
    EXPECT_EQ(v, Series<Rational>::constant(1, 5)) << z.short_str() << " " << w.short_str();
  }
}

TEST(Correlator, EnergyMismatchVanishes) { EXPECT_TRUE(e_correlator({EOp{2, Rational(1), true}, EOp{-1, Rational(1), true}}, 4).known_zero()); }

TEST(Atilde, ZerothCoefficientIsWeightOverM) {
  KnotParams K(2, 3);
  for (int m = 1; m <= 4; ++m) {
    AtildeCoeffs<FullModel> A(FullModel{K}, m, 4);
    EXPECT_EQ(A.coeff(0), USeries::constant(K.Ab(m).scaled(Rational(1, m)), 4));
  }
}

TEST(Atilde, FirstCoefficientForSingleBox) {
  KnotParams K(2, 3);
  const int cap = 5;
  AtildeCoeffs<FullModel> A(FullModel{K}, 1, cap);
  // A^b (A - A^{-1}) zeta(u)/zeta(u Q/P)
  Series<Rational> ratio = zeta_series(Rational(1), 0, cap + 2) * series_inverse(zeta_series(Rational(K.Q, K.P), 0, cap + 2));
  USeries expect = lift_scaled(ratio, K.Ab(1) * (K.A(1) - K.A(-1)));
  EXPECT_TRUE(equal_to_common_cap(A.coeff(1), expect));
}

TEST(Atilde, SecondCoefficientMatchesExponentialExpansion) {
  KnotParams K(3, 2);
  const int cap = 5, m = 2;
  AtildeCoeffs<FullModel> A(FullModel{K}, m, cap);
  auto x = [&](int i) {
    return lift_scaled(zeta_ratio_series(Rational(m), i, K.b, cap), (K.A(i) - K.A(-i)).scaled(Rational(1, i)));
  };
  // [w^2] exp(x1 w + x2 w^2) = x2 + x1^2/2
  USeries expect = x(2) + (x(1) * x(1)).scaled(Rational(1, 2));
  EXPECT_TRUE(equal_to_common_cap(A.raw(2), expect));
}

TEST(Kmu, SingleBoxClosedForm) {
  KnotParams K(2, 3);
  USeries expect = lift_scaled(series_inverse(zeta_series(Rational(2, 3), 0, 8)), K.Ab(1) * (K.A(1) - K.A(-1))).truncated(5);
  EXPECT_EQ(K_mu(Partition{1}, K, 5), expect);
  LaurentPoly a = K.a(), one(1);
  EXPECT_EQ(K_mu(Partition{1}, K, 1).coeff(-1), ((a - one) * K.Abs(-1, 1)).scaled(K.b));
}

TEST(Kmu, AgreesWithRossoJonesOnMultiplesOfQ) {
  for (auto [Q, P] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}}) {
    KnotParams K(Q, P);
    for (const Partition& mu : {Partition{Q}, Partition{2 * Q}}) EXPECT_EQ(K_mu(mu, K, 3), ov_coefficient_rossojones(K, mu, 3)) << K.str() << mu.str();
  }
}

TEST(Connected, OnePointEqualsDisconnected) {
  KnotParams K(2, 3);
  EXPECT_EQ(connected_K(Partition{3}, K, 4), K_mu(Partition{3}, K, 4));
}

TEST(Connected, TwoPointInclusionExclusion) {
  KnotParams K(2, 3);
  const int cap = 3;
  USeries k12 = K_mu(Partition{2, 1}, K, cap + 1), k1 = K_mu(Partition{1}, K, cap + 1), k2 = K_mu(Partition{2}, K, cap + 1);
  EXPECT_TRUE(equal_to_common_cap(connected_K(Partition{2, 1}, K, cap), (k12 - k1 * k2).truncated(cap)));
}

TEST(Connected, ThreePointLogarithmExpansion) {
  // [p1 p2 p3] log Z: K_123 - K_1 K_23 - K_2 K_13 - K_3 K_12 + 2 K_1 K_2 K_3
  KnotParams K(3, 2);
  const int cap = 3, deep = cap + 2;
  for (const Partition& mu : {Partition{1, 1, 1}, Partition{2, 1, 1}, Partition{3, 2, 1}}) {
    const auto& p = mu.parts();
    auto k = [&](std::vector<int> parts) { return K_mu(Partition(parts), K, deep); };
    USeries k1 = k({p[0]}), k2 = k({p[1]}), k3 = k({p[2]});
    USeries expect = k({p[0], p[1], p[2]}) - k1 * k({p[1], p[2]}) - k2 * k({p[0], p[2]}) - k3 * k({p[0], p[1]}) + (k1 * k2 * k3).scaled(Rational(2));
    EXPECT_TRUE(equal_to_common_cap(connected_K(mu, K, cap), expect.truncated(cap))) << mu.str();
  }
}

TEST(Connected, OnlyGenusOrdersSurvive) {
  // [u^k] K°_mu vanishes unless k = 2g - 2 + n
  KnotParams K(2, 3);
  for (const Partition& mu : {Partition{1}, Partition{3}, Partition{2, 1}, Partition{1, 1, 1}}) {
    USeries c = connected_K(mu, K, 4);
    for (int e = c.floor(); e < c.cap(); ++e)
      if ((e - mu.length()) % 2 != 0) EXPECT_TRUE(c.coeff(e).zero()) << mu.str() << " u^" << e;
  }
}

TEST(GenusZero, OnePointSingleBox) {
  KnotParams K(2, 3);
  LaurentPoly a = K.a(), one(1);
  EXPECT_EQ(C_g(0, Partition{1}, K), ((a - one) * K.Abs(-1, 1)).scaled(Rational(K.Q)));
}

TEST(GenusZero, OnePointMatchesVacuumFormula) {
  KnotParams K(2, 3);
  for (int m = 1; m <= 10; ++m) EXPECT_EQ(C_g(0, Partition{m}, K), vacuum_one_point(m, K)) << m;
}

TEST(GenusZero, RejectsOrdersBelowTheLeadingPole) { EXPECT_THROW(C_g(0, Partition(), KnotParams(2, 3)), StabilityRange); }
