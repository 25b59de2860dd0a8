#include <gtest/gtest.h>

#include <knotfermion/quasipoly.hpp>
#include <knotfermion/spectral_curve.hpp>

using namespace knotfermion;

namespace {

std::vector<std::vector<int>> range1(int lo, int hi) {
  std::vector<std::vector<int>> out;
  for (int m = lo; m <= hi; ++m) out.push_back({m});
  return out;
}

}  // namespace

TEST(XiHat, FirstValues) {
  KnotParams K(2, 3);
  EXPECT_EQ(xi_hat(1, 1, K), LaurentPoly(-1));
  EXPECT_TRUE(xi_hat(2, 1, K).zero());
  EXPECT_EQ(xi_hat(2, 2, K), LaurentPoly(1));
}

TEST(XiHat, RestoresXiAfterMonomialFactor) {
  for (const KnotParams& K : {KnotParams(2, 3), KnotParams(3, 2)})
    for (int e : {1, 2})
      for (int m = 1; m <= 8; ++m) EXPECT_EQ(K.a_to_Ahat(xi_hat(e, m, K)) * K.Abs(-1, m), xi_coeff(e, m, K));
}

TEST(Quasipoly, GenusOneOnePoint) {
  KnotParams K(2, 3);
  QuasiOptions opt;
  opt.grid = range1(1, 20);
  opt.holdout = range1(21, 25);
  FitResult r = fit_quasipolynomial(1, 1, K, opt);
  EXPECT_TRUE(r.passed());
  for (const Rational& res : r.holdout_residuals) EXPECT_TRUE(res.is_zero());
  EXPECT_LE(r.degree, quasipoly_degree_bound(1, 1));
}

TEST(Quasipoly, TwoPointGenusOneIsSymmetric) {
  KnotParams K(2, 3);
  FitResult r = fit_quasipolynomial(2, 1, K);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(fit_is_symmetric(r));
  for (const Rational& res : r.holdout_residuals) EXPECT_TRUE(res.is_zero());
}

TEST(Quasipoly, ExactModeCertifiesInTheField) {
  KnotParams K(3, 2);
  QuasiOptions opt;
  opt.mode = FitMode::exact;
  FitResult r = fit_quasipolynomial(1, 1, K, opt);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.holdout_exact);
  // the specialized fit at any node is the exact fit evaluated there
  QuasiOptions s;
  s.seed = 11;
  FitResult sp = fit_quasipolynomial(1, 1, K, s);
  ASSERT_TRUE(sp.passed());
  ASSERT_EQ(sp.monomials, r.monomials);
  for (std::size_t c = 0; c < r.coeffs.size(); ++c)
    for (std::size_t i = 0; i < r.monomials.size(); ++i) EXPECT_EQ(r.coeffs[c][i].evaluate_at(sp.a_nodes[0]), sp.coeffs[c][i].evaluate_at(Rational(0)));
}

TEST(Quasipoly, ExcludedUnstableCases) {
  KnotParams K(2, 3);
  EXPECT_THROW(fit_quasipolynomial(2, 0, K), StabilityError);
  EXPECT_THROW(fit_quasipolynomial(1, -1, K), StabilityError);
  EXPECT_THROW(fit_quasipolynomial(3, 0, K), StabilityRange);
}

TEST(Quasipoly, DeterministicForFixedSeed) {
  KnotParams K(2, 3);
  QuasiOptions opt;
  opt.seed = 7;
  EXPECT_EQ(fit_quasipolynomial(2, 1, K, opt).to_json().dump(), fit_quasipolynomial(2, 1, K, opt).to_json().dump());
}

TEST(Quasipoly, UnstableObstructions) {
  for (const KnotParams& K : {KnotParams(2, 3), KnotParams(3, 2)}) {
    CheckReport r = unstable_witness(K, 3);
    for (const Check& c : r.checks) EXPECT_EQ(c.status, CheckStatus::pass) << K.str() << " " << c.name;
  }
}

TEST(MatrixElement, LowestOrderNeedsFactorM) {
  KnotParams K(2, 3);
  FitResult plain = fit_matrix_element(MatrixElement{0, Rational(1, 2), 0, false}, K);
  EXPECT_NE(plain.status, FitStatus::ok);
  FitResult scaled = fit_matrix_element(MatrixElement{0, Rational(1, 2), 0, false, 1}, K);
  EXPECT_TRUE(scaled.passed());
  EXPECT_EQ(scaled.degree, 0);
  // m times the lowest order is b(1-a) xi^1_m, here at the specialization node
  ASSERT_FALSE(scaled.a_nodes.empty());
  EXPECT_EQ(scaled.coeff(0, {0}).evaluate_at(Rational(0)), (Rational(1) - scaled.a_nodes[0]) * K.b);
  EXPECT_TRUE(scaled.coeff(1, {0}).is_zero());
}

TEST(MatrixElement, FirstShiftOnExplicitGrid) {
  KnotParams K(2, 3);
  std::vector<int> grid;
  for (int m = 1; m <= 15; ++m) grid.push_back(m);
  FitResult r = fit_matrix_element(MatrixElement{0, Rational(1, 2), 1, false}, K, grid, {16, 17, 18, 19});
  EXPECT_TRUE(r.passed());
}

TEST(MatrixElement, HigherOrdersFit) {
  KnotParams K(3, 2);
  for (int k = 0; k <= 2; ++k)
    for (int s = 0; s <= 3; ++s) {
      if (k == 0 && s == 0) continue;
      FitResult r = fit_matrix_element(MatrixElement{k, Rational(1, 2), s, false}, K);
      EXPECT_TRUE(r.passed()) << k << " " << s;
    }
}

TEST(MatrixElement, IdentityPart) {
  KnotParams K(2, 3);
  for (int k = -1; k <= 2; ++k) {
    FitResult r = fit_matrix_element(MatrixElement{k, Rational(1, 2), 0, true}, K);
    EXPECT_TRUE(r.passed()) << k;
  }
}

TEST(MatrixElement, ExactMode) {
  KnotParams K(2, 3);
  FitResult r = fit_matrix_element(MatrixElement{1, Rational(1, 2), 2, false}, K, {}, {}, FitMode::exact, 3);
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.holdout_exact);
}
