#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "fermion.hpp"
#include "jacobi.hpp"
#include "knot.hpp"
#include "laurent.hpp"
#include "ratfunc.hpp"
#include "report.hpp"
#include "series.hpp"

namespace knotfermion {

/// Polynomial in the global coordinate U with coefficients Laurent in Ahat.
using UPoly = Laurent<LaurentPoly>;
/// Rational function in U over Laurent polynomials in Ahat (unreduced).
using UFraction = Fraction<UPoly>;

/// Critical-point data of x(U). Only (Delta u)^2 is stored; both values are Laurent polynomials in Ahat.
struct CurveData {
  KnotParams K;
  LaurentPoly u0;
  LaurentPoly du2;
  LaurentPoly A_plus;   // A^{b+1}
  LaurentPoly A_minus;  // A^{b-1}
};

inline CurveData curve_data(const KnotParams& K) {
  const Rational& b = K.b;
  LaurentPoly a = K.a(), one(1);
  CurveData d;
  d.K = K;
  d.A_plus = K.Abs(1, 1);
  d.A_minus = K.Abs(-1, 1);
  d.u0 = ((one + a + (a - one).scaled(b)) * K.Abs(1, -1)).scaled(Rational(1, 2));
  d.du2 = ((a - one) * (a.scaled((b + 1) * (b + 1)) - LaurentPoly((b - 1) * (b - 1))) * K.Abs(1, -2)).scaled(Rational(1, 4));
  return d;
}

inline UPoly upoly_const(const LaurentPoly& c) { return UPoly(c); }
inline UPoly upoly_U() { return UPoly::monomial(LaurentPoly(1), 1); }

/// Value of a U-polynomial at rational U and Ahat.
inline Rational evaluate(const UPoly& p, const Rational& U, const Rational& Ahat) {
  Rational r = 0;
  for (auto& [e, c] : p.terms()) r += evaluate(c, Ahat) * U.pow(e);
  return r;
}
inline Rational evaluate(const UFraction& f, const Rational& U, const Rational& Ahat) {
  Rational d = evaluate(f.den(), U, Ahat);
  if (d.is_zero()) throw DivisionByZero("evaluation at a pole");
  return evaluate(f.num(), U, Ahat) / d;
}

/// Lambda(U) = U ((1 - A^{b+1} U)/(1 - A^{b-1} U))^b as a power series in U, exact for U^1..U^order.
inline Series<LaurentPoly> lambda_series(const KnotParams& K, int order) {
  if (order < 1) throw InvalidArgument("order must be at least 1");
  CurveData d = curve_data(K);
  Series<LaurentPoly> f = binomial_series(d.A_plus, K.b, order) * binomial_series(d.A_minus, -K.b, order);
  return f.shifted(1).truncated(order + 1);
}

/// 1/Lambda as a power series in V = 1/U on the branch U -> infinity, exact for V^1..V^order.
inline Series<LaurentPoly> inverse_lambda_at_infinity(const KnotParams& K, int order) {
  if (order < 1) throw InvalidArgument("order must be at least 1");
  CurveData d = curve_data(K);
  LaurentPoly ip = unit_inverse(d.A_plus), im = unit_inverse(d.A_minus);
  Series<LaurentPoly> f = binomial_series(ip, -K.b, order) * binomial_series(im, K.b, order);
  return f.shifted(1).truncated(order + 1).scaled(K.Ab(-2));
}

/// V = 1/U as a power series in L = 1/Lambda, exact for L^1..L^order.
inline Series<LaurentPoly> u_inverse_in_lambda(const KnotParams& K, int order) {
  return lagrange_revert(inverse_lambda_at_infinity(K, order), order);
}

/// The building blocks xi~_0 = 1/(1 - (U-u0)^2/du2) and xi~_1 = (U-u0) xi~_0.
inline std::pair<UFraction, UFraction> xi_tilde(const KnotParams& K) {
  CurveData d = curve_data(K);
  UPoly s = upoly_U() - upoly_const(d.u0);
  UPoly den = upoly_const(d.du2) - s * s;
  return {UFraction(upoly_const(d.du2), den), UFraction(upoly_const(d.du2) * s, den)};
}

/// xi^1, xi^2 as the combinations of xi~_0, xi~_1 with coefficients built from u0 and du2.
inline std::pair<UFraction, UFraction> xi_closed_combination(const KnotParams& K) {
  CurveData d = curve_data(K);
  auto [t0, t1] = xi_tilde(K);
  UFraction c0(upoly_const(d.u0), upoly_const(d.du2 * d.A_plus));
  UFraction c1(UPoly(1), upoly_const(d.du2 * d.A_plus));
  UFraction c2(UPoly(-1), upoly_const(d.du2 * d.A_plus * d.A_plus));
  return {c0 * t0 + c1 * t1, c2 * t0};
}

/// xi^1 = U/(A^{b+1} D), xi^2 = -1/(A^{2b+2} D) with D = du2 - (U - u0)^2; equal to the
/// combination above after cancelling du2.
inline std::pair<UFraction, UFraction> xi_closed(const KnotParams& K) {
  CurveData d = curve_data(K);
  UPoly s = upoly_U() - upoly_const(d.u0);
  UPoly D = upoly_const(d.du2) - s * s;
  return {UFraction(upoly_U(), upoly_const(d.A_plus) * D), UFraction(UPoly(-1), upoly_const(d.A_plus * d.A_plus) * D)};
}

/// Expansion of a rational function of U at U = infinity as a power series in V = 1/U, exact
/// below V^cap. The leading U-coefficient of the denominator must be a unit.
inline Series<LaurentPoly> expand_at_infinity(const UFraction& f, int cap) {
  const UPoly& n = f.num();
  const UPoly& d = f.den();
  if (n.zero()) return Series<LaurentPoly>(0, cap);
  if (n.lo() < 0 || d.lo() < 0) throw InvalidArgument("expansion needs polynomial numerator and denominator");
  int shift = d.hi() - n.hi();
  if (shift < 0) throw BadValuation("rational function has a pole at infinity");
  auto reversed = [cap](const UPoly& p) {
    Series<LaurentPoly> s(0, cap);
    for (int k = 0; k <= p.hi() && k < cap; ++k) s.set(k, p.coeff(p.hi() - k));
    return s;
  };
  Series<LaurentPoly> r = reversed(n) * series_inverse(reversed(d));
  return r.shifted(shift).truncated(cap);
}

/// [Lambda^{-m}] xi^index for 0 <= m <= M, through the closed form and exact reversion.
inline Series<LaurentPoly> xi_in_inverse_lambda(int index, const KnotParams& K, int M) {
  if (index != 1 && index != 2) throw InvalidArgument("xi index must be 1 or 2");
  auto [x1, x2] = xi_closed(K);
  Series<LaurentPoly> inV = expand_at_infinity(index == 1 ? x1 : x2, M + 1);
  return series_compose(inV, u_inverse_in_lambda(K, M)).truncated(M + 1);
}

/// xi^index_m = (-1)^m A^{(b-1)m} P^{(m(b-1)+index-1, 1)}_{m-index}(1 - 2A^2), as a Laurent polynomial in Ahat.
inline LaurentPoly xi_coeff(int index, int m, const KnotParams& K) {
  if (index != 1 && index != 2) throw InvalidArgument("xi index must be 1 or 2");
  if (m < 1) throw InvalidArgument("xi coefficients start at m = 1");
  Rational alpha = Rational(m) * (K.b - 1) + Rational(index - 1);
  LaurentPoly p = K.a_to_Ahat(jacobi_P<Rational>(m - index, alpha, Rational(1)));
  p = p * K.Abs(-1, m);
  return m % 2 ? -p : p;
}

inline CheckReport xi_expansion_check(int index, const KnotParams& K, int M) {
  if (M < 1) throw InvalidArgument("M must be at least 1");
  CheckReport r;
  r.suite = "xi";
  r.params = {{"index", index}, {"Q", K.Q}, {"P", K.P}, {"M", M}};
  Series<LaurentPoly> s = xi_in_inverse_lambda(index, K, M);
  r.add("xi" + std::to_string(index) + " constant term", s.coeff(0).zero(), s.coeff(0).zero() ? Json(nullptr) : to_json(s.coeff(0)));
  for (int m = 1; m <= M; ++m) {
    LaurentPoly want = xi_coeff(index, m, K), got = s.coeff(m);
    bool ok = want == got;
    r.add("xi" + std::to_string(index) + " m=" + std::to_string(m), ok, ok ? Json(nullptr) : Json{{"expansion", to_json(got)}, {"jacobi", to_json(want)}});
  }
  return r;
}

/// Monic polynomial division over Laurent coefficients: returns {quotient, remainder}.
inline std::pair<UPoly, UPoly> divmod_monic(UPoly n, const UPoly& d) {
  if (d.zero() || d.coeff(d.hi()) != LaurentPoly(1)) throw InvalidArgument("divisor must be monic");
  UPoly q;
  while (!n.zero() && n.hi() >= d.hi()) {
    UPoly t = UPoly::monomial(n.coeff(n.hi()), n.hi() - d.hi());
    q = q + t;
    n = n - t * d;
  }
  return {q, n};
}

/// Numerator of dx/dU over the common denominator U (1 - A^{b+1} U)(1 - A^{b-1} U).
inline UPoly dx_dU_numerator(const KnotParams& K) {
  CurveData d = curve_data(K);
  UPoly U = upoly_U(), one(1);
  UPoly fp = one - upoly_const(d.A_plus) * U, fm = one - upoly_const(d.A_minus) * U;
  Rational Q(K.Q), P(K.P);
  return (fp * fm).scaled(LaurentPoly(Q)) - (upoly_const(d.A_plus) * U * fm).scaled(LaurentPoly(P)) +
         (upoly_const(d.A_minus) * U * fp).scaled(LaurentPoly(P));
}

/// The critical points of x are the roots of (U - u0)^2 - du2: the numerator of dx/dU is divisible by it.
inline CheckReport critical_point_check(const KnotParams& K) {
  CurveData d = curve_data(K);
  UPoly s = upoly_U() - upoly_const(d.u0);
  UPoly crit = s * s - upoly_const(d.du2);
  auto [q, rem] = divmod_monic(dx_dU_numerator(K), crit);
  CheckReport r;
  r.suite = "critical";
  r.params = {{"Q", K.Q}, {"P", K.P}};
  r.add("dx/dU numerator divisible by (U-u0)^2-du2", rem.zero() && q.hi() == 0);
  r.add("u0^2 - du2 = A^{-2b}", d.u0 * d.u0 - d.du2 == K.Ab(-2));
  return r;
}

/// Closed form of (1/2 pi i) oint_{U,infty} U^{mu-x} (1 - A+ U)^{b mu - y}/(1 - A- U)^{b mu + y} dU.
inline LaurentPoly I_integral(int mu, int x, int y, const KnotParams& K) {
  if (mu < 1) throw InvalidArgument("mu must be at least 1");
  int n = mu - x - 2 * y + 1;
  if (n < 0) return {};
  Rational alpha = Rational(mu) * (K.b - 1) + Rational(x + y - 1);
  LaurentPoly p = K.a_to_Ahat(jacobi_P<Rational>(n, alpha, Rational(2 * y - 1)));
  p = p * K.Ab(2 * (mu - y)) * K.Abs(1, -n);
  return n % 2 ? -p : p;
}

/// The same integral by direct residue extraction: expand both binomials at U = infinity
/// and read off the coefficient of U^{-1}.
inline LaurentPoly I_integral_direct(int mu, int x, int y, const KnotParams& K) {
  if (mu < 1) throw InvalidArgument("mu must be at least 1");
  CurveData d = curve_data(K);
  int n = mu - x - 2 * y + 1;
  if (n < 0) return {};
  Rational e = K.b * Rational(mu);
  // (1 - A+U)^{e-y}/(1 - A-U)^{e+y} = (A+/A-)^{e-y} (-A- U)^{-2y} (1 - W/A+)^{e-y} (1 - W/A-)^{-e-y}, W = 1/U
  Series<LaurentPoly> w = binomial_series(unit_inverse(d.A_plus), e - Rational(y), n + 1) *
                          binomial_series(unit_inverse(d.A_minus), -e - Rational(y), n + 1);
  // (A+/A-)^{e-y} = A^{2(e-y)} = Ahat^{2(P mu - Q y)}; (-A-)^{-2y} = A-^{-2y}
  LaurentPoly pref = LaurentPoly::monomial(1, 2 * (K.P * mu - K.Q * y)) * K.Abs(-1, -2 * y);
  return w.coeff(n) * pref;
}

/// Connected genus-zero correlators from the fermionic side.
class GenusZeroCorrelators {
 public:
  explicit GenusZeroCorrelators(const KnotParams& K) : K_(K), one_(FullModel{K}, 0, 1), two_(FullModel{K}, 1, 2) {}

  /// C^{(0)}_{(m)} = (Q/b) [u^{-1}] K_m.
  LaurentPoly one_point(int m) { return one_.K({m}).coeff(-1).scaled(Rational(K_.Q) / K_.b); }
  /// C^{(0)}_{(m1,m2)} = Q^2 [u^0] K°_{(m1,m2)}.
  LaurentPoly two_point(int m1, int m2) { return two_.connected({m1, m2}).coeff(0).scaled(Rational(K_.Q * K_.Q)); }

 private:
  KnotParams K_;
  KmuEngine<FullModel> one_;
  KmuEngine<FullModel> two_;
};

/// Q (1 - A^2)/m^2 xi^1_m.
inline LaurentPoly vacuum_one_point(int m, const KnotParams& K) {
  return (LaurentPoly(1) - K.a()) * xi_coeff(1, m, K).scaled(Rational(K.Q, m * m));
}

/// Q^2 (a-1) b/(m1+m2) [((a+1) + (a-1) b) xi1 xi1 + a (xi1 xi2 + xi2 xi1)].
inline LaurentPoly two_point_closed_form(int m1, int m2, const KnotParams& K) {
  LaurentPoly a = K.a(), one(1);
  LaurentPoly x11 = xi_coeff(1, m1, K), x12 = xi_coeff(1, m2, K), x21 = xi_coeff(2, m1, K), x22 = xi_coeff(2, m2, K);
  LaurentPoly inner = (a + one + (a - one).scaled(K.b)) * x11 * x12 + a * (x11 * x22 + x21 * x12);
  return ((a - one) * inner).scaled(Rational(K.Q * K.Q) * K.b / Rational(m1 + m2));
}

inline CheckReport vacuum_check(const KnotParams& K, int M, GenusZeroCorrelators* g0 = nullptr) {
  GenusZeroCorrelators local(K);
  GenusZeroCorrelators& g = g0 ? *g0 : local;
  CheckReport r;
  r.suite = "vacuum";
  r.params = {{"Q", K.Q}, {"P", K.P}, {"M", M}};
  for (int m = 1; m <= M; ++m) {
    LaurentPoly got = g.one_point(m), want = vacuum_one_point(m, K);
    r.add("C0_(" + std::to_string(m) + ")", got == want, got == want ? Json(nullptr) : Json{{"fermion", to_json(got)}, {"closed", to_json(want)}});
  }
  return r;
}

/// y - (gamma/Q) x = (1/Q) log((1 - A^{b+1}U)/(1 - A^{b-1}U)) expanded in 1/Lambda on the branch
/// U -> infinity; its power coefficients are compared with m C^{(0)}_{(m)}/Q^2.
inline CheckReport f01_check(const KnotParams& K, int M, GenusZeroCorrelators* g0 = nullptr) {
  if (M < 1) throw InvalidArgument("M must be at least 1");
  GenusZeroCorrelators local(K);
  GenusZeroCorrelators& g = g0 ? *g0 : local;
  CurveData d = curve_data(K);
  // log(1 - A+U) - log(1 - A-U) = log(A+/A-) + log(1 - V/A+) - log(1 - V/A-)
  Series<LaurentPoly> logs(1, M + 1);
  LaurentPoly ip = unit_inverse(d.A_plus), im = unit_inverse(d.A_minus);
  LaurentPoly pp = ip, pm = im;
  for (int k = 1; k <= M; ++k, pp = pp * ip, pm = pm * im) logs.set(k, (pm - pp).scaled(Rational(1, k)));
  Series<LaurentPoly> inL = series_compose(logs, u_inverse_in_lambda(K, M)).scaled(LaurentPoly(Rational(1, K.Q)));
  CheckReport r;
  r.suite = "f01";
  r.params = {{"Q", K.Q}, {"P", K.P}, {"M", M}};
  for (int m = 1; m <= M; ++m) {
    LaurentPoly want = g.one_point(m).scaled(Rational(m, K.Q * K.Q)), got = inL.coeff(m);
    r.add("Lambda^-" + std::to_string(m), got == want, got == want ? Json(nullptr) : Json{{"curve", to_json(got)}, {"fermion", to_json(want)}});
  }
  // constant term: (1/Q) log(A+/A-), tracked as a multiple of log A
  int ahat_exp = (d.A_plus.lo() - d.A_minus.lo());
  Rational log_A_multiple = Rational(ahat_exp, K.Q * K.Q);
  r.info("constant term", {{"log_A_multiple", to_json(log_A_multiple)},
                           {"equals_log_A2", log_A_multiple == Rational(2)},
                           {"equals_log_A2_over_Q", log_A_multiple == Rational(2, K.Q)}});
  return r;
}

/// Q^2 [log(U1 - U2) - log(Lambda1 - Lambda2)] at Lambda_i = infinity, bidegree (m1, m2) coefficients
/// for 1 <= m1 + m2 <= W, plus the additive constant as a multiple of log A.
struct TwoPointLogExpansion {
  std::map<std::pair<int, int>, LaurentPoly> coeff;
  Rational log_A_constant;
};

inline TwoPointLogExpansion two_point_log_expansion(const KnotParams& K, int W) {
  // With V_i = 1/U_i = sum_k v_k L_i^k and L_i = 1/Lambda_i:
  //   log((U1-U2)/(Lambda1-Lambda2)) = log((V2-V1)/(L2-L1)) - log(V1/L1) - log(V2/L2)
  // and (V2-V1)/(L2-L1) = sum_k v_k h_{k-1}(L1, L2). The constant log v_1 survives with multiplicity -1.
  // Bidegree-homogeneous pieces are graded by tau and stored dehomogenized (L2 = 1) as polynomials in L1.
  using BiPoly = Laurent<LaurentPoly>;
  Series<LaurentPoly> v = u_inverse_in_lambda(K, W + 1);
  LaurentPoly v1inv = unit_inverse(v.coeff(1));
  Series<BiPoly> mix(1, W + 1), s1(1, W + 1), s2(1, W + 1);
  for (int dgr = 1; dgr <= W; ++dgr) {
    LaurentPoly c = v.coeff(dgr + 1) * v1inv;
    std::vector<LaurentPoly> h(static_cast<std::size_t>(dgr + 1), c);
    mix.set(dgr, BiPoly::dense(0, h));
    s1.set(dgr, BiPoly::monomial(c, dgr));
    s2.set(dgr, BiPoly(c));
  }
  Series<BiPoly> f = series_log1p(mix) - series_log1p(s1) - series_log1p(s2);
  Rational q2(K.Q * K.Q);
  TwoPointLogExpansion out;
  for (int t = 1; t <= W; ++t)
    for (int m1 = 0; m1 <= t; ++m1) out.coeff[{m1, t - m1}] = f.coeff(t).coeff(m1).scaled(q2);
  // log v_1 = log A^{2b}
  out.log_A_constant = -q2 * Rational(2) * K.b;
  return out;
}

inline CheckReport f02_check(const KnotParams& K, int W, GenusZeroCorrelators* g0 = nullptr) {
  if (W < 2) throw InvalidArgument("W must be at least 2");
  GenusZeroCorrelators local(K);
  GenusZeroCorrelators& g = g0 ? *g0 : local;
  TwoPointLogExpansion e = two_point_log_expansion(K, W);
  CheckReport r;
  r.suite = "f02";
  r.params = {{"Q", K.Q}, {"P", K.P}, {"W", W}};
  bool pure_zero = true;
  for (auto& [k, c] : e.coeff)
    if ((k.first == 0 || k.second == 0) && !c.zero()) pure_zero = false;
  r.add("no single-variable terms", pure_zero);
  for (int t = 2; t <= W; ++t)
    for (int m1 = 1; m1 < t; ++m1) {
      int m2 = t - m1;
      std::string tag = "(" + std::to_string(m1) + "," + std::to_string(m2) + ")";
      LaurentPoly fer = g.two_point(m1, m2), closed = two_point_closed_form(m1, m2, K), curve = e.coeff.at({m1, m2});
      r.add("C0_" + tag + " fermion = closed form", fer == closed, fer == closed ? Json(nullptr) : Json{{"fermion", to_json(fer)}, {"closed", to_json(closed)}});
      r.add("C0_" + tag + " fermion = log expansion", fer == curve, fer == curve ? Json(nullptr) : Json{{"fermion", to_json(fer)}, {"curve", to_json(curve)}});
      if (m1 < m2) {
        bool sym = curve == e.coeff.at({m2, m1});
        r.add("log expansion symmetric " + tag, sym);
      }
    }
  r.info("constant term", {{"log_A_multiple", to_json(e.log_A_constant)}});
  return r;
}

}  // namespace knotfermion
