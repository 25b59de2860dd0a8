#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fermion.hpp"
#include "homfly.hpp"
#include "jacobi.hpp"
#include "parallel.hpp"
#include "partitions.hpp"
#include "qcurve.hpp"
#include "quasipoly.hpp"
#include "report.hpp"
#include "spectral_curve.hpp"

namespace knotfermion {

/// Sizes and parameters shared by the verification suites.
struct SuiteOptions {
  KnotParams K{2, 3};
  int max_weight = 6;   // threeway: |mu| bound
  int u_order = 4;      // threeway: u-cap
  int m_max = 0;        // 0 selects the per-suite default
  std::uint64_t seed = 1;
  FitMode mode = FitMode::specialized;
  int n_max = 3;        // quasipoly: number of points
  int k_max = 3;        // quasipoly: order in u
  int N = 20;           // qcurve: Lambda order
  int cases = 200;      // kernel: randomized cases per property
};

inline int pick(int v, int def) { return v > 0 ? v : def; }

inline Json knot_params(const KnotParams& K) { return {{"Q", K.Q}, {"P", K.P}}; }

/// Rosso-Jones, cut-and-join and fermionic routes agree for every mu with |mu| <= max_weight.
inline CheckReport threeway_check(const KnotParams& K, int max_weight, int cap) {
  Stopwatch sw;
  CheckReport r;
  r.suite = "threeway";
  r.params = {{"Q", K.Q}, {"P", K.P}, {"max_weight", max_weight}, {"u_order", cap}};
  std::vector<Partition> mus;
  for (int w = 1; w <= max_weight; ++w)
    for (const Partition& mu : partitions_of(w)) mus.push_back(mu);
  std::vector<char> rj_cj(mus.size()), cj_f(mus.size());
  parallel_for(mus.size(), worker_count(), [&](int, std::size_t i) {
    USeries a = ov_coefficient_rossojones(K, mus[i], cap);
    USeries b = ov_coefficient_cutjoin(K, mus[i], cap);
    USeries c = K_mu(mus[i], K, cap);
    rj_cj[i] = a == b;
    cj_f[i] = b == c;
  });
  for (std::size_t i = 0; i < mus.size(); ++i) {
    bool ok = rj_cj[i] && cj_f[i];
    Json w = ok ? Json(nullptr) : Json{{"rosso_jones_eq_cut_join", static_cast<bool>(rj_cj[i])}, {"cut_join_eq_fermion", static_cast<bool>(cj_f[i])}};
    r.add("mu=" + mus[i].str(), ok, w);
  }
  r.ms = sw.ms();
  return r;
}

/// Jacobi polynomial identities and the G-decomposition.
inline CheckReport jacobi_check(const KnotParams& K, int m_max, std::uint64_t seed, int three_term_max = 30, int g_k_max = 2) {
  Stopwatch sw;
  CheckReport r;
  r.suite = "jacobi";
  r.params = {{"Q", K.Q}, {"P", K.P}, {"m_max", m_max}, {"three_term_max", three_term_max}, {"g_k_max", g_k_max}, {"seed", seed}};
  LaurentPoly sigma = sigma_symbol();
  Json bad = Json::array();
  for (int k = 1; k <= three_term_max; ++k)
    if (!three_term_residual<LaurentPoly>(k, sigma).zero()) bad.push_back(k);
  r.add("three-term relation, symbolic sigma, k <= " + std::to_string(three_term_max), bad.empty(), bad.empty() ? Json(nullptr) : Json{{"k", bad}});

  bad = Json::array();
  for (int m = 1; m <= m_max; ++m)
    if (!genfun_coefficient<LaurentPoly>(m, sigma).zero()) bad.push_back(m);
  r.add("generating-function series, symbolic x, m <= " + std::to_string(m_max), bad.empty(), bad.empty() ? Json(nullptr) : Json{{"m", bad}});

  int hm = std::min(m_max, 6), hcap = 6;
  bad = Json::array();
  for (int m = 1; m <= hm; ++m)
    for (const Rational& rho : {Rational(1), Rational(2), Rational(5, 2), Rational(1, 3)})
      if (!is_zero(qphi_identity_residual(m, K, rho, hcap))) bad.push_back(Json::array({m, rho.short_str()}));
  r.add("q-hypergeometric identity, m <= " + std::to_string(hm) + ", u-cap " + std::to_string(hcap), bad.empty(),
        bad.empty() ? Json(nullptr) : Json{{"m_rho", bad}});

  int jm = std::min(m_max, 8);
  bad = Json::array();
  for (int m = 1; m <= jm; ++m) {
    auto [r1, r2] = hyper2f1_jacobi_residuals<LaurentPoly>(m, sigma);
    if (!r1.zero() || !r2.zero()) bad.push_back(m);
  }
  r.add("2F1 to Jacobi relations, symbolic sigma, m <= " + std::to_string(jm), bad.empty(), bad.empty() ? Json(nullptr) : Json{{"m", bad}});

  for (int k = 0; k <= g_k_max; ++k) {
    GFitOptions opt;
    opt.seed = seed;
    GDecomposition g = g_decomposition(k, K, opt);
    std::string p = "G-decomposition k=" + std::to_string(k) + ": ";
    Json w = {{"degree", g.degree}, {"a_nodes", g.a_nodes.size()}};
    r.add(p + "fit with exact holdout", g.degree >= 0 && g.holdout_exact, w);
    r.add(p + "values at m = 0", g.m0_values_ok);
    r.add(p + "double zero on the diagonal", g.diagonal_double_zero);
  }
  r.ms = sw.ms();
  return r;
}

/// xi-function closed forms, their expansion in 1/Lambda, the critical points and the I-integrals.
inline CheckReport xi_check(const KnotParams& K, int m_max) {
  Stopwatch sw;
  CheckReport r;
  r.suite = "xi";
  r.params = {{"Q", K.Q}, {"P", K.P}, {"m_max", m_max}};
  auto [c1, c2] = xi_closed(K);
  auto [k1, k2] = xi_closed_combination(K);
  r.add("closed forms equal the xi~ combination", c1 == k1 && c2 == k2);
  r.absorb(xi_expansion_check(1, K, m_max), "xi^1: ");
  r.absorb(xi_expansion_check(2, K, m_max), "xi^2: ");
  r.absorb(critical_point_check(K), "critical points: ");

  Series<LaurentPoly> L = lambda_series(K, m_max);
  Series<LaurentPoly> R = lagrange_revert(L, m_max);
  Series<LaurentPoly> x = Series<LaurentPoly>::monomial(LaurentPoly(1), 1, m_max + 1);
  r.add("Lambda(U) reversion round-trip through order " + std::to_string(m_max),
        series_compose(L, R).truncated(m_max + 1) == x && series_compose(R, L).truncated(m_max + 1) == x);

  LaurentPoly a = K.a(), one(1);
  bool direct = true, r10 = true, r01 = true, rm11 = true, prod = true;
  for (int mu = 1; mu <= m_max; ++mu) {
    for (auto [px, py] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {-1, 1}})
      direct = direct && I_integral(mu, px, py, K) == I_integral_direct(mu, px, py, K);
    LaurentPoly x1 = xi_coeff(1, mu, K), x2 = xi_coeff(2, mu, K);
    LaurentPoly i10 = I_integral(mu, 1, 0, K), i01 = I_integral(mu, 0, 1, K);
    r10 = r10 && i10 == (one - a).scaled(K.b) * x1;
    r01 = r01 && i01 == -(K.Abs(-1, -1) * x1);
    rm11 = rm11 && I_integral(mu, -1, 1, K) == -(K.Ab(-2) * ((a + one + (a - one).scaled(K.b)) * x1 + a * x2));
    LaurentPoly disp = (one - a).scaled(-K.b) * x1;
    prod = prod && i10 * i10 == disp * disp;
  }
  r.add("I closed form = contour expansion, mu <= " + std::to_string(m_max), direct);
  r.add("I(1,0) = b(1-A^2) xi^1", r10);
  r.add("I(0,1) = -A^{1-b} xi^1", r01);
  r.add("I(-1,1) = -A^{-2b}((A^2+1+(A^2-1)b) xi^1 + A^2 xi^2)", rm11);
  r.add("I(1,0)^2 agrees with the sign-flipped form", prod);
  r.ms = sw.ms();
  return r;
}

/// Genus-zero one- and two-point correlators against the curve, and the unstable-term obstructions.
inline CheckReport unstable_check(const KnotParams& K, int m_max, std::uint64_t seed) {
  Stopwatch sw;
  CheckReport r;
  r.suite = "unstable";
  r.params = {{"Q", K.Q}, {"P", K.P}, {"m_max", m_max}, {"seed", seed}};
  GenusZeroCorrelators g0(K);
  r.absorb(vacuum_check(K, m_max, &g0), "one-point: ");
  r.absorb(f01_check(K, std::min(m_max, 8), &g0), "F_{0,1}: ");
  r.absorb(f02_check(K, std::min(m_max, 8), &g0), "F_{0,2}: ");
  r.absorb(unstable_witness(K, seed), "obstruction: ");
  r.ms = sw.ms();
  return r;
}

/// Quasi-polynomial fits of connected correlators and of the A~ matrix elements.
inline CheckReport quasipoly_check(const KnotParams& K, FitMode mode, std::uint64_t seed, int n_max, int k_max, bool matrix_elements = true) {
  Stopwatch sw;
  CheckReport r;
  r.suite = "quasipoly";
  r.params = {{"Q", K.Q}, {"P", K.P}, {"mode", to_string(mode)}, {"seed", seed}, {"n_max", n_max}, {"k_max", k_max}};
  for (int n = 1; n <= n_max; ++n)
    for (int k = std::max(-1, n - 2); k <= k_max; ++k) {
      if (!is_stable(n, k)) continue;
      QuasiOptions opt;
      opt.mode = mode;
      opt.seed = seed;
      FitResult f = fit_quasipolynomial(n, k, K, opt);
      std::string p = "(n,k)=(" + std::to_string(n) + "," + std::to_string(k) + ")";
      r.add(p + " fits within the degree bound", f.passed(),
            {{"degree", f.degree}, {"degree_bound", f.degree_bound}, {"status", to_string(f.status)}, {"a_nodes", f.a_nodes.size()}});
      r.add(p + " fit is symmetric", fit_is_symmetric(f));
    }
  if (matrix_elements) {
    for (int k = 0; k <= 2; ++k)
      for (int s = 0; s <= 3; ++s) {
        FitResult f = fit_matrix_element(MatrixElement{k, Rational(1, 2), s, false}, K, {}, {}, mode, seed);
        std::string p = "matrix element k=" + std::to_string(k) + " s=" + std::to_string(s);
        if (k == 0 && s == 0) {
          // the u^0 coefficient is b(1-a) xi^1_m / m: polynomial only after multiplying by m
          r.add(p + " is not quasi-polynomial", f.status != FitStatus::ok, {{"status", to_string(f.status)}});
          FitResult g = fit_matrix_element(MatrixElement{0, Rational(1, 2), 0, false, 1}, K, {}, {}, mode, seed);
          r.add(p + " times m fits", g.passed(), {{"degree", g.degree}});
          continue;
        }
        r.add(p + " fits", f.passed(), {{"degree", f.degree}, {"degree_bound", f.degree_bound}});
      }
    for (int k = -1; k <= 2; ++k) {
      FitResult f = fit_matrix_element(MatrixElement{k, Rational(1, 2), 0, true}, K, {}, {}, mode, seed);
      r.add("identity part k=" + std::to_string(k) + " fits", f.passed(), {{"degree", f.degree}, {"degree_bound", f.degree_bound}});
    }
  }
  r.ms = sw.ms();
  return r;
}

/// Wave function annihilation and dequantization.
inline CheckReport qcurve_suite(const KnotParams& K, int N, int order = 8) {
  Stopwatch sw;
  CheckReport r;
  r.suite = "qcurve";
  r.params = {{"Q", K.Q}, {"P", K.P}, {"N", N}, {"order", order}};
  r.absorb(qcurve_check(K, N), "");
  std::vector<Rational> samples{Rational(0), Rational(1, 2), Rational(2), Rational(-3, 5), Rational(7, 3)};
  r.absorb(dequantization_check(K, samples, order), "dequantization: ");
  r.ms = sw.ms();
  return r;
}

namespace detail {

class KernelRandom {
 public:
  explicit KernelRandom(std::uint64_t seed) : g_(seed) {}
  int uniform(int lo, int hi) { return lo + static_cast<int>(g_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Rational rational() { return Rational(uniform(-20, 20), uniform(1, 9)); }
  Rational nonzero() {
    for (;;) {
      Rational r = rational();
      if (!r.is_zero()) return r;
    }
  }
  LaurentPoly poly(int max_terms = 5) {
    int lo = uniform(-3, 3), n = uniform(1, max_terms);
    std::vector<Rational> c;
    for (int i = 0; i < n; ++i) c.push_back(rational());
    return LaurentPoly::dense(lo, c);
  }
  LaurentPoly nonzero_poly() {
    for (;;) {
      LaurentPoly p = poly();
      if (!p.zero()) return p;
    }
  }
  Series<Rational> series(int floor, int cap) {
    Series<Rational> s(floor, cap);
    for (int e = floor; e < cap; ++e) s.set(e, rational());
    return s;
  }

 private:
  std::mt19937_64 g_;
};

}  // namespace detail

/// Randomized algebraic properties of the exact kernel, zeta-series parity and reversion round-trips.
inline CheckReport kernel_check(std::uint64_t seed, int cases) {
  Stopwatch sw;
  CheckReport r;
  r.suite = "kernel";
  r.params = {{"seed", seed}, {"cases", cases}};
  detail::KernelRandom rng(seed);
  int q_ring = 0, q_inv = 0, p_ring = 0, f_ring = 0, f_inv = 0, n_ring = 0, s_ring = 0, s_inv = 0, s_explog = 0, rev = 0;
  const int cap = 8;
  for (int i = 0; i < cases; ++i) {
    Rational a = rng.rational(), b = rng.rational(), c = rng.rational(), d = rng.nonzero();
    q_ring += (a + b == b + a && a * b == b * a && (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c &&
               a - a == Rational(0) && a * Rational(1) == a);
    q_inv += (d * d.inverse() == Rational(1) && (a / d) * d == a);

    LaurentPoly p = rng.poly(), q = rng.poly(), s = rng.poly();
    p_ring += (p + q == q + p && p * q == q * p && (p + q) + s == p + (q + s) && (p * q) * s == p * (q * s) && p * (q + s) == p * q + p * s &&
               is_zero(p - p) && p * LaurentPoly(1) == p);

    RationalFunction f(rng.poly(), rng.nonzero_poly()), g(rng.poly(), rng.nonzero_poly()), h(rng.poly(), rng.nonzero_poly());
    f_ring += (f + g == g + f && f * g == g * f && (f + g) + h == f + (g + h) && (f * g) * h == f * (g * h) && f * (g + h) == f * g + f * h);
    RationalFunction nz(rng.nonzero_poly(), rng.nonzero_poly());
    f_inv += ((f / nz) * nz == f && nz * nz.inverse() == RationalFunction(1));

    Laurent<LaurentPoly> x = Laurent<LaurentPoly>::dense(rng.uniform(-2, 2), {rng.poly(), rng.poly()});
    Laurent<LaurentPoly> y = Laurent<LaurentPoly>::dense(rng.uniform(-2, 2), {rng.poly(), rng.poly(), rng.poly()});
    Laurent<LaurentPoly> z = Laurent<LaurentPoly>::dense(rng.uniform(-2, 2), {rng.poly()});
    n_ring += (x * y == y * x && (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z);

    Series<Rational> A = rng.series(0, cap), B = rng.series(rng.uniform(-1, 1), cap), C = rng.series(0, cap);
    s_ring += (A + B == B + A && A * B == B * A && (A * B) * C == A * (B * C) && A * (B + C) == A * B + A * C);
    Series<Rational> U = rng.series(0, cap);
    U.set(0, rng.nonzero());
    s_inv += equal_to_common_cap(U * series_inverse(U), Series<Rational>::constant(1, cap));
    Series<Rational> X = rng.series(1, cap);
    s_explog += equal_to_common_cap(series_log1p(series_exp(X) - Series<Rational>::constant(1, cap)), X);

    Series<Rational> T = rng.series(1, cap + 1);
    T.set(1, rng.nonzero());
    Series<Rational> Rv = lagrange_revert(T, cap);
    Series<Rational> id = Series<Rational>::monomial(1, 1, cap + 1);
    rev += (series_compose(T, Rv).truncated(cap + 1) == id && series_compose(Rv, T).truncated(cap + 1) == id);
  }
  auto add = [&](const std::string& n, int ok) { r.add(n, ok == cases, {{"passed", ok}, {"cases", cases}}); };
  add("rational field axioms", q_ring);
  add("rational inverse round-trip", q_inv);
  add("Laurent polynomial ring axioms", p_ring);
  add("rational function field axioms", f_ring);
  add("rational function inverse round-trip", f_inv);
  add("nested Laurent ring axioms", n_ring);
  add("series ring axioms", s_ring);
  add("series inverse round-trip", s_inv);
  add("series log1p(exp - 1) round-trip", s_explog);
  add("series reversion round-trip", rev);

  bool odd = true, even = true;
  for (int i = 0; i < 20; ++i) {
    Rational c = rng.nonzero();
    Series<Rational> z = zeta_series(c, 12);
    Series<Rational> ref = exp_series(c / Rational(2), 12) - exp_series(-c / Rational(2), 12);
    odd = odd && z == ref;
    for (int e = 0; e < 12; e += 2) odd = odd && z.coeff(e).is_zero();
    Series<Rational> zo = zeta_over_arg_series(c, 12);
    for (int e = 1; e < 12; e += 2) even = even && zo.coeff(e).is_zero();
    even = even && equal_to_common_cap(zo.shifted(1).scaled(c), z.truncated(12));
  }
  r.add("zeta(cu) is odd and equals e^{cu/2} - e^{-cu/2}", odd);
  r.add("zeta(cu)/(cu) is even", even);
  r.ms = sw.ms();
  return r;
}

}  // namespace knotfermion
