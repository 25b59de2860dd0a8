#include <gtest/gtest.h>

#include <knotfermion/fermion.hpp>
#include <knotfermion/homfly.hpp>

using namespace knotfermion;

namespace {

USeries lift_scaled(const Series<Rational>& s, const LaurentPoly& c) {
  return s.map([&](const Rational& r) { return c.scaled(r); });
}

}  // namespace

TEST(Homfly, UnknotFundamentalIsAp1) {
  KnotParams K(1, 1);
  PowerSumPoly<USeries> H = homfly_extended(K, Partition{1}, 2);
  ASSERT_EQ(H.size(), 1u);
  const USeries& c = H.at(Partition{1});
  EXPECT_EQ(c.coeff(0), LaurentPoly::var(1));
  EXPECT_TRUE(c.coeff(1).zero());
}

TEST(Homfly, TrefoilFundamentalFromAdamsOperation) {
  KnotParams K(2, 3);
  const int cap = 5;
  PowerSumPoly<USeries> H = homfly_extended(K, Partition{1}, cap);
  ASSERT_EQ(H.size(), 2u);
  // A^3 (e^{u} s_2 - e^{-u} s_11), s_2 = (p1^2 + p2)/2, s_11 = (p1^2 - p2)/2
  LaurentPoly A3 = K.A(3);
  USeries ep = lift_scaled(exp_series(Rational(1), cap), A3), em = lift_scaled(exp_series(Rational(-1), cap), A3);
  EXPECT_EQ(H.at(Partition{2}), (ep + em).scaled(Rational(1, 2)));
  EXPECT_EQ(H.at(Partition{1, 1}), (ep - em).scaled(Rational(1, 2)));
}

TEST(Homfly, MonomialsHaveWeightQTimesR) {
  KnotParams K(3, 2);
  for (const auto& R : partitions_of(3))
    for (auto& [s, c] : homfly_extended(K, R, 3)) EXPECT_EQ(s.weight(), 3 * R.weight());
}

TEST(TopologicalLocus, LeadingPoleIsBTimesAMinusAInverse) {
  KnotParams K(2, 3);
  USeries p1 = topological_locus(K, 1, 4);
  EXPECT_EQ(p1.valuation(), -1);
  EXPECT_EQ(p1.coeff(-1), (K.A(1) - K.A(-1)).scaled(K.b));
}

TEST(TopologicalLocus, AntisymmetricUnderAInversion) {
  KnotParams K(3, 5);
  for (int i = 1; i <= 4; ++i) {
    USeries p = topological_locus(K, i, 5);
    USeries flipped = p.map([](const LaurentPoly& c) { return c.subs_power(-1); });
    EXPECT_EQ(flipped, -p);
  }
}

TEST(TopologicalLocus, SecondPowerSum) {
  KnotParams K(2, 3);
  Series<Rational> iz = series_inverse(zeta_series(Rational(2) / K.b, 0, 8));
  USeries expect = lift_scaled(iz, K.A(2) - K.A(-2)).truncated(5);
  EXPECT_TRUE(equal_to_common_cap(topological_locus(K, 2, 5), expect));
}

TEST(OoguriVafa, EmptyPartitionIsOne) {
  KnotParams K(2, 3);
  EXPECT_EQ(ov_coefficient_rossojones(K, Partition(), 3), USeries::constant(LaurentPoly(1), 3));
  EXPECT_EQ(ov_coefficient_cutjoin(K, Partition(), 3), USeries::constant(LaurentPoly(1), 3));
}

TEST(OoguriVafa, SingleBoxClosedForm) {
  for (auto [Q, P] : std::vector<std::pair<int, int>>{{1, 1}, {2, 3}, {3, 2}, {2, 5}}) {
    KnotParams K(Q, P);
    const int cap = 5;
    // A^b (A - A^{-1}) / zeta(u Q/P)
    USeries expect = lift_scaled(series_inverse(zeta_series(Rational(Q, P), 0, cap + 2)), K.Ab(1) * (K.A(1) - K.A(-1))).truncated(cap);
    EXPECT_EQ(ov_coefficient_rossojones(K, Partition{1}, cap), expect) << K.str();
    EXPECT_EQ(ov_coefficient_cutjoin(K, Partition{1}, cap), expect) << K.str();
    LaurentPoly a = K.a(), one(1);
    EXPECT_EQ(expect.coeff(-1), ((a - one) * K.Abs(-1, 1)).scaled(K.b)) << K.str();
  }
}

TEST(OoguriVafa, CutJoinMatchesRossoJonesOnMultiples) {
  KnotParams K(2, 3);
  for (const Partition& mu : {Partition{2}, Partition{4}, Partition{2, 2}})
    EXPECT_EQ(ov_coefficient_cutjoin(K, mu, 3), ov_coefficient_rossojones(K, mu, 3)) << mu.str();
}

TEST(OoguriVafa, SingleBoxIsTheFramedLocus) {
  // K_(1) is A^b p*_1 with no cut-join correction
  for (const KnotParams& K : {KnotParams(1, 2), KnotParams(2, 3), KnotParams(3, 2)}) {
    USeries k = ov_coefficient_cutjoin(K, Partition{1}, 3);
    USeries seed = topological_locus(K, 1, 3).scaled(K.Ab(1));
    for (int e = -1; e <= 1; ++e) EXPECT_EQ(k.coeff(e), seed.coeff(e)) << K.str() << " u^" << e;
  }
}

TEST(OoguriVafa, ThreeRoutesAgreeForTrefoil) {
  KnotParams K(2, 3);
  for (int w = 1; w <= 4; ++w)
    for (const Partition& mu : partitions_of(w)) {
      USeries rj = ov_coefficient_rossojones(K, mu, 3);
      EXPECT_EQ(rj, ov_coefficient_cutjoin(K, mu, 3)) << mu.str();
      EXPECT_EQ(rj, K_mu(mu, K, 3)) << mu.str();
    }
}
