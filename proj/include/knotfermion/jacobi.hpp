#pragma once

#include <utility>
#include <vector>

#include "fermion.hpp"
#include "fit.hpp"
#include "knot.hpp"
#include "laurent.hpp"
#include "partitions.hpp"
#include "series.hpp"

namespace knotfermion {

/// Polynomials in a whose coefficients lie in R (R = Rational, or LaurentPoly for a symbolic parameter).
template <class R>
using APoly = Laurent<R>;

/// Jacobi polynomial P_n^{(alpha,beta)}(1 - 2a) as a polynomial in a; zero for n < 0.
/// Uses (alpha+1)_n / (alpha+1)_s = (alpha+s+1)_{n-s}, so no division by a parameter occurs.
template <class R>
APoly<R> jacobi_P(int n, const R& alpha, const R& beta) {
  if (n < 0) return {};
  std::vector<R> c;
  c.reserve(static_cast<std::size_t>(n) + 1);
  Rational nf = factorial(n);
  R top = R(n) + alpha + beta + R(1);
  for (int s = 0; s <= n; ++s) {
    Rational k = binomial(Rational(n), s) / nf;
    if (s % 2) k = -k;
    R v = rising(alpha + R(s + 1), n - s) * rising(top, s);
    c.push_back(v * R(k));
  }
  return APoly<R>::dense(0, std::move(c));
}

/// J_m = P_m^{(sigma - m - 1, 1)}(1 - 2a) with sigma = rho b.
template <class R>
APoly<R> jacobi_J(int m, const R& sigma) {
  return jacobi_P<R>(m, sigma - R(m + 1), R(1));
}

/// The parameter sigma = rho b as a formal variable.
inline LaurentPoly sigma_symbol() { return LaurentPoly::var(1); }

/// Evaluates a polynomial in a at a rational point, coefficientwise in R.
template <class R>
R evaluate_a(const APoly<R>& p, const Rational& a) {
  R r(0);
  for (int e = p.hi(); e >= p.lo() && !p.zero(); --e) r = r * R(a) + p.coeff(e);
  if (!p.zero() && p.lo() != 0) r = r * R(a.pow(p.lo()));
  return r;
}

/// J_k + (a + 1 + (a - 1) sigma / k) J_{k-1} + a J_{k-2}.
template <class R>
APoly<R> three_term_residual(int k, const R& sigma) {
  if (k < 1) throw InvalidArgument("three-term relation needs k >= 1");
  APoly<R> a = APoly<R>::var(1);
  APoly<R> one(R(1));
  APoly<R> mid = a + one + (a - one) * APoly<R>(sigma * R(Rational(1, k)));
  return jacobi_J<R>(k, sigma) + mid * jacobi_J<R>(k - 1, sigma) + a * jacobi_J<R>(k - 2, sigma);
}

/// Difference of the two sides of the Jacobi generating-function identity, as a Laurent
/// polynomial in A: the partition sum over lambda |- m minus
/// (-1)^m A^{-m} (1 - A^2) (x/m) P_{m-1}^{(x-m,1)}(1 - 2A^2).
template <class R>
Laurent<R> genfun_coefficient(int m, const R& x) {
  if (m < 1) throw InvalidArgument("generating-function coefficient needs m >= 1");
  std::vector<Laurent<R>> c(static_cast<std::size_t>(m) + 1);
  for (int i = 1; i <= m; ++i)
    c[static_cast<std::size_t>(i)] = (Laurent<R>::monomial(R(1), i) - Laurent<R>::monomial(R(1), -i)) * Laurent<R>(x * R(Rational(1, i)));
  Laurent<R> lhs;
  for (const Partition& lam : partitions_of(m)) {
    Laurent<R> t(R(1));
    const auto& p = lam.parts();
    for (std::size_t i = 0; i < p.size(); ++i) {
      int d = p[i] - (i + 1 < p.size() ? p[i + 1] : 0);
      if (d == 0) continue;
      Laurent<R> f(R(1));
      for (int j = 0; j < d; ++j) f = f * c[i + 1];
      t = t * f * Laurent<R>(R(factorial(d).inverse()));
    }
    lhs += t;
  }
  APoly<R> P = jacobi_P<R>(m - 1, x - R(m), R(1));
  Laurent<R> pa = P.subs_power(2);
  Laurent<R> pre = Laurent<R>::monomial(R(m % 2 ? -1 : 1), -m) * (Laurent<R>(R(1)) - Laurent<R>::monomial(R(1), 2)) *
                   Laurent<R>(x * R(Rational(1, m)));
  return lhs - pre * pa;
}

/// Coefficients [w^m] exp(sum_i p_i w^i zeta(i u rho)/zeta(i u / b) / i) for 0 <= m <= M, where
/// p_i = pnum(i) (p_i = a^i - 1 gives the Jacobi exponential generating function).
template <class C, class F>
std::vector<Series<C>> exp_w_coefficients(int M, const Rational& rho, const Rational& b, int cap, F pnum) {
  std::vector<Series<C>> ix;  // i x_i
  for (int i = 1; i <= M; ++i) ix.push_back(lift<C>(zeta_ratio_series(rho, i, b, cap)).scaled(pnum(i)));
  std::vector<Series<C>> E;
  E.push_back(Series<C>::constant(C(1), cap));
  for (int m = 1; m <= M; ++m) {
    Series<C> acc(0, cap);
    for (int i = 1; i <= m; ++i) acc += ix[static_cast<std::size_t>(i - 1)] * E[static_cast<std::size_t>(m - i)];
    E.push_back(acc.scaled(Rational(1, m)));
  }
  return E;
}

inline std::vector<Series<LaurentPoly>> jacobi_exp_coefficients(int M, const Rational& rho, const Rational& b, int cap) {
  return exp_w_coefficients<LaurentPoly>(M, rho, b, cap, [](int i) { return LaurentPoly::var(i) - LaurentPoly(1); });
}

namespace detail {

/// Product of factors (1 - q^{c + s eps}) with q = e^{-u/b}, in the limit eps -> 0.
/// Each factor with c != 0 is (c u / b) times a unit series; factors with c = 0 contribute s eps u / b.
/// The caller balances factor counts so the powers of u / b cancel.
class QFactorProduct {
 public:
  QFactorProduct(const Rational& b, int cap) : b_(b), cap_(cap), num_(Series<Rational>::constant(1, cap)), den_(num_) {}

  void mul(const Rational& c, int s) { push(c, s, +1); }
  void div(const Rational& c, int s) { push(c, s, -1); }
  void mul_q_power(const Rational& e) { num_ = num_ * exp_series(-e / b_, cap_); }

  /// Value of the product: zero if eps survives, an error if eps is in the denominator.
  Series<Rational> value() const {
    if (eps_ > 0) return Series<Rational>(0, cap_);
    if (eps_ < 0) throw DivisionByZero("q-product has a pole at this parameter value");
    if (count_ != 0) throw InvalidArgument("unbalanced q-product");
    return (num_ * series_inverse(den_)).scaled(scalar_);
  }

 private:
  void push(const Rational& c, int s, int dir) {
    count_ += dir;
    if (c.is_zero()) {
      if (s == 0) throw DivisionByZero("identically vanishing q-factor");
      eps_ += dir;
      scalar_ = dir > 0 ? scalar_ * Rational(s) : scalar_ / Rational(s);
      return;
    }
    scalar_ = dir > 0 ? scalar_ * c : scalar_ / c;
    // (1 - e^{-x})/x with x = c u / b
    Series<Rational> unit(0, cap_);
    Rational lam = c / b_, p = 1;
    for (int j = 0; j < cap_; ++j) {
      unit.set(j, p / factorial(j + 1));
      p = -p * lam;
    }
    if (dir > 0)
      num_ = num_ * unit;
    else
      den_ = den_ * unit;
  }

  Rational b_;
  int cap_;
  Series<Rational> num_, den_;
  Rational scalar_ = 1;
  int eps_ = 0;
  int count_ = 0;
};

}  // namespace detail

/// (q^{1/2 + sigma/2})^m (q^{-sigma}; q)_m / (q; q)_m 2phi1(q^{-m}, q^sigma; q^{sigma+1-m}; q; a q),
/// q = e^{-u/b}, as a u-series with coefficients polynomial in a. Integer sigma is the limit sigma + eps.
inline Series<LaurentPoly> qphi_series(int m, const Rational& sigma, const Rational& b, int cap) {
  Series<LaurentPoly> out(0, cap);
  for (int r = 0; r <= m; ++r) {
    detail::QFactorProduct f(b, cap);
    f.mul_q_power(Rational(m) * (Rational(1) + sigma) / Rational(2) + Rational(r));
    for (int k = 1; k <= m; ++k) {
      f.mul(-sigma + Rational(k - 1), -1);
      f.div(Rational(k), 0);
    }
    for (int j = 1; j <= r; ++j) {
      f.mul(Rational(j - 1 - m), 0);
      f.mul(sigma + Rational(j - 1), 1);
      f.div(sigma + Rational(j - m), 1);
      f.div(Rational(j), 0);
    }
    Series<Rational> v = f.value();
    out += v.map([r](const Rational& c) { return LaurentPoly::monomial(c, r); });
  }
  return out;
}

/// Difference between [w^m] of the Jacobi exponential generating function with zeta-ratio weights
/// and its q-hypergeometric closed form, as a u-series with coefficients in Ahat.
inline USeries qphi_identity_residual(int m, const KnotParams& K, const Rational& rho, int cap) {
  if (m < 1) throw InvalidArgument("q-hypergeometric identity needs m >= 1");
  auto lhs = jacobi_exp_coefficients(m, rho, K.b, cap)[static_cast<std::size_t>(m)];
  auto rhs = qphi_series(m, rho * K.b, K.b, cap);
  return (lhs - rhs).map([&K](const LaurentPoly& p) { return K.a_to_Ahat(p); });
}

/// Gamma(m - sigma)/(Gamma(m+1) Gamma(-sigma)) 2F1(-m, sigma; sigma + 1 - m)(a) as a polynomial in a.
/// The Gamma ratio (-sigma)_m / m! absorbs the lower Pochhammer symbol: (-sigma)_m / (sigma+1-m)_s
/// = (-1)^m sigma (sigma - 1) ... (sigma - m + s + 1).
template <class R>
APoly<R> scaled_hyper2f1(int m, const R& sigma) {
  std::vector<R> c;
  Rational mf = factorial(m);
  for (int s = 0; s <= m; ++s) {
    R v(1);
    for (int i = 0; i < m - s; ++i) v = v * (sigma - R(i));
    Rational k = rising(Rational(-m), s) / factorial(s) / mf;
    if (m % 2) k = -k;
    c.push_back(v * rising(sigma, s) * R(k));
  }
  return APoly<R>::dense(0, std::move(c));
}

/// Residuals of the two 2F1-to-Jacobi relations: the scaled 2F1 minus (-1)^m (1-a) sigma J_{m-1} / m,
/// and its a-derivative minus (-1)^{m+1} sigma (J_{m-1} + J_{m-2}).
template <class R>
std::pair<APoly<R>, APoly<R>> hyper2f1_jacobi_residuals(int m, const R& sigma) {
  if (m < 1) throw InvalidArgument("2F1 relations need m >= 1");
  APoly<R> F = scaled_hyper2f1<R>(m, sigma);
  APoly<R> one(R(1)), a = APoly<R>::var(1);
  R sg = m % 2 ? -sigma : sigma;
  APoly<R> r1 = F - (one - a) * APoly<R>(sg * R(Rational(1, m))) * jacobi_J<R>(m - 1, sigma);
  APoly<R> r2 = F.derivative() + APoly<R>(sg) * (jacobi_J<R>(m - 1, sigma) + jacobi_J<R>(m - 2, sigma));
  return {r1, r2};
}

/// Polynomials G1_k, G2_k in (rho, m) with coefficients in Q[a] such that
/// [u^{2k} w^m] exp(sum_i (a^i-1)/i w^i zeta(i u rho)/zeta(i u/b)) (-1)^m m / rho = G1 J_{m-1} + G2 J_{m-2}.
struct GDecomposition {
  int k = 0;
  KnotParams K;
  int degree = -1;
  MPoly G1, G2;  // exponent vectors (rho power, m power)
  std::vector<Rational> a_nodes;
  std::vector<std::pair<Rational, int>> holdout;
  bool holdout_exact = false;  // identity holds in Q[a] at every holdout point
  bool m0_values_ok = false;       // G1(rho, 0) = delta_{k,0} (1-a) b and G2(rho, 0) = 0
  bool diagonal_double_zero = false;  // G1(m, m), G2(m, m) divisible by m^2 (vacuous for k = 0)
  bool passed() const { return degree >= 0 && holdout_exact && m0_values_ok && diagonal_double_zero; }
};

struct GFitOptions {
  std::vector<int> m_samples;  // fit values of m; empty selects 1 .. 2D+4 for each trial degree D
  int holdout_points = 5;
  std::uint64_t seed = 1;
  int max_a_nodes = 24;
};

namespace detail {

inline Rational g_rho_node(int j) { return Rational(2 * j + 1, 3) + Rational(1, 11); }

/// Left-hand side (-1)^m m / rho [u^{2k} w^m] for all m <= M, at a rational a.
class GLhsCache {
 public:
  GLhsCache(int k, const Rational& b, const Rational& a) : k_(k), b_(b), a_(a) {}
  Rational value(const Rational& rho, int m) {
    auto& v = data_[rho];
    if (static_cast<int>(v.size()) <= m) {
      int M = std::max(m, 2 * static_cast<int>(v.size()) + 8);
      auto E = exp_w_coefficients<Rational>(M, rho, b_, 2 * k_ + 1, [this](int i) { return a_.pow(i) - Rational(1); });
      v.clear();
      for (int j = 0; j <= M; ++j) v.push_back(E[static_cast<std::size_t>(j)].coeff(2 * k_) * Rational(j % 2 ? -j : j) / rho);
    }
    return v[static_cast<std::size_t>(m)];
  }

 private:
  int k_;
  Rational b_, a_;
  std::map<Rational, std::vector<Rational>> data_;
};

inline FitSample g_sample(GLhsCache& lhs, const Rational& b, const Rational& a, const Rational& rho, int m) {
  Rational s = rho * b;
  return FitSample{{rho, Rational(m)}, {evaluate_a(jacobi_J<Rational>(m - 1, s), a), evaluate_a(jacobi_J<Rational>(m - 2, s), a)}, lhs.value(rho, m)};
}

}  // namespace detail

inline GDecomposition g_decomposition(int k, const KnotParams& K, const GFitOptions& opt = {}) {
  if (k < 0) throw InvalidArgument("G-decomposition needs k >= 0");
  GDecomposition out;
  out.k = k;
  out.K = K;
  const Rational b = K.b;
  int bound = 9 * k + 2;
  auto grid_m = [&](int D) {
    if (!opt.m_samples.empty()) return opt.m_samples;
    std::vector<int> ms;
    for (int m = 1; m <= 2 * D + 4; ++m) ms.push_back(m);
    return ms;
  };
  auto holdout_pts = [&](int D) {
    std::vector<std::pair<Rational, int>> h;
    int mmax = 0;
    for (int m : grid_m(D)) mmax = std::max(mmax, m);
    for (int i = 0; i < opt.holdout_points; ++i) h.emplace_back(detail::g_rho_node(D + 3 + i), mmax + 1 + i);
    return h;
  };
  auto provider_at = [&](const Rational& a, std::shared_ptr<detail::GLhsCache> cache) {
    return [&, a, cache](int D) {
      std::vector<FitSample> fit, hold;
      for (int j = 0; j < D + 3; ++j)
        for (int m : grid_m(D)) fit.push_back(detail::g_sample(*cache, b, a, detail::g_rho_node(j), m));
      for (auto& [rho, m] : holdout_pts(D)) hold.push_back(detail::g_sample(*cache, b, a, rho, m));
      return std::make_pair(fit, hold);
    };
  };
  RationalSampler rs(opt.seed);
  std::vector<Rational> avoid{Rational(1, 2)};
  std::vector<ChannelFit> fits;
  std::optional<std::vector<std::vector<RationalFunction>>> poly;
  while (static_cast<int>(out.a_nodes.size()) < opt.max_a_nodes) {
    Rational a = rs.unit_interval(out.a_nodes);
    auto cache = std::make_shared<detail::GLhsCache>(k, b, a);
    SampleProvider prov = provider_at(a, cache);
    ChannelFit f = out.degree < 0 ? minimal_degree_fit(2, 2, bound, prov) : [&] {
      auto [fs, hs] = prov(out.degree);
      return fit_channels(2, 2, out.degree, fs, hs);
    }();
    if (f.status != FitStatus::ok) throw FitFailed("G-decomposition at k=" + std::to_string(k) + ": " + to_string(f.status) + " at degree " + std::to_string(f.degree));
    out.degree = f.degree;
    out.a_nodes.push_back(a);
    fits.push_back(std::move(f));
    if (fits.size() >= 2 && (poly = interpolate_fits_in_a(out.a_nodes, fits))) break;
  }
  if (!poly) throw FitFailed("G-decomposition coefficients did not stabilize as rational functions of a");
  const auto& mons = fits[0].monomials;
  for (std::size_t i = 0; i < mons.size(); ++i) {
    if (!(*poly)[0][i].is_zero()) out.G1[mons[i]] = (*poly)[0][i];
    if (!(*poly)[1][i].is_zero()) out.G2[mons[i]] = (*poly)[1][i];
  }
  // exact certification in Q[a] at the holdout points
  auto eval_mpoly = [](const MPoly& P, const Rational& rho, const Rational& m) {
    RationalFunction v;
    for (auto& [e, c] : P) v += c * RationalFunction(rho.pow(e[0]) * m.pow(e[1]));
    return v;
  };
  out.holdout = holdout_pts(out.degree);
  out.holdout_exact = true;
  for (auto& [rho, m] : out.holdout) {
    auto E = jacobi_exp_coefficients(m, rho, b, 2 * k + 1);
    LaurentPoly lhs = E[static_cast<std::size_t>(m)].coeff(2 * k) * LaurentPoly(Rational(m % 2 ? -m : m) / rho);
    Rational s = rho * b;
    RationalFunction rhs = eval_mpoly(out.G1, rho, Rational(m)) * RationalFunction(jacobi_J<Rational>(m - 1, s)) +
                           eval_mpoly(out.G2, rho, Rational(m)) * RationalFunction(jacobi_J<Rational>(m - 2, s));
    if (!(RationalFunction(lhs) == rhs)) out.holdout_exact = false;
  }
  // values at m = 0
  LaurentPoly one(1), a = LaurentPoly::var(1);
  out.m0_values_ok = true;
  for (auto& [e, c] : out.G1)
    if (e[1] == 0 && !(e[0] == 0 && k == 0)) out.m0_values_ok = false;
  for (auto& [e, c] : out.G2)
    if (e[1] == 0) out.m0_values_ok = false;
  if (k == 0) {
    auto it = out.G1.find({0, 0});
    RationalFunction c0 = it == out.G1.end() ? RationalFunction() : it->second;
    if (!(c0 == RationalFunction((one - a) * LaurentPoly(b)))) out.m0_values_ok = false;
  }
  // diagonal rho = m: coefficients of m^0 and m^1
  out.diagonal_double_zero = true;
  if (k >= 1)
    for (const MPoly* P : {&out.G1, &out.G2}) {
      RationalFunction low[2];
      for (auto& [e, c] : *P)
        if (e[0] + e[1] < 2) low[e[0] + e[1]] += c;
      if (!low[0].is_zero() || !low[1].is_zero()) out.diagonal_double_zero = false;
    }
  return out;
}

}  // namespace knotfermion
