#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "knot.hpp"
#include "laurent.hpp"
#include "parallel.hpp"
#include "partitions.hpp"
#include "ratfunc.hpp"
#include "report.hpp"
#include "series.hpp"
#include "spectral_curve.hpp"

namespace knotfermion {

/// Laurent polynomial in t = e^{hbar/(2Q)} whose coefficients are Laurent polynomials in Ahat = A^{1/Q}.
using TAPoly = Laurent<LaurentPoly>;
/// Element of the fraction field of TAPoly.
using TAFraction = Fraction<TAPoly>;

/// c * t^te * Ahat^ae.
inline TAPoly ta_monomial(const Rational& c, int te, int ae) { return TAPoly::monomial(LaurentPoly::monomial(c, ae), te); }

/// Substitutes t -> 1/t.
inline TAFraction invert_t(const TAFraction& f) { return TAFraction(f.num().subs_power(-1), f.den().subs_power(-1)); }

inline Json to_json(const TAPoly& p) {
  Json out = Json::array();
  for (auto& [e, c] : p.terms()) out.push_back(Json::array({e, to_json(c)}));
  return out;
}
inline Json to_json(const TAFraction& f) { return {{"num", to_json(f.num())}, {"den", to_json(f.den())}}; }

/// Coefficient of Lambda^l in the principally specialized wave function, in t and Ahat.
inline TAFraction psi_coefficient(const KnotParams& K, int l) {
  if (l < 0) throw InvalidArgument("l must be nonnegative");
  const int Q = K.Q, P = K.P;
  TAPoly num = ta_monomial(1, -P * (l * l - l), P * l), den(1);
  for (int i = 1; i <= l; ++i) {
    num *= ta_monomial(1, -Q * (i - 1), Q) - ta_monomial(1, Q * (i - 1), -Q);
    den *= ta_monomial(1, -Q * i, 0) - ta_monomial(1, Q * i, 0);
  }
  return TAFraction(num, den);
}

/// psi_0 .. psi_N, computed independently per l.
inline std::vector<TAFraction> wave_function(const KnotParams& K, int N) {
  if (N < 0) throw InvalidArgument("N must be nonnegative");
  std::vector<TAFraction> out(static_cast<std::size_t>(N + 1));
  parallel_for(out.size(), worker_count(), [&](int, std::size_t l) { out[l] = psi_coefficient(K, static_cast<int>(l)); });
  return out;
}

/// psi_{l+1}/psi_l as dictated by the difference operator:
/// A^b t^{-2Pl} (A t^{-Ql} - A^{-1} t^{Ql}) / (t^{-Q(l+1)} - t^{Q(l+1)}).
inline TAFraction recursion_ratio(const KnotParams& K, int l) {
  const int Q = K.Q, P = K.P;
  TAPoly num = ta_monomial(1, -2 * P * l, P) * (ta_monomial(1, -Q * l, Q) - ta_monomial(1, Q * l, -Q));
  TAPoly den = ta_monomial(1, -Q * (l + 1), 0) - ta_monomial(1, Q * (l + 1), 0);
  return TAFraction(num, den);
}

/// Coefficients of Lambda^1 .. Lambda^N after applying the quantum curve operator to the wave function
/// truncated at Lambda^N. The shift exp(c hbar Lambda d/dLambda) multiplies psi_l by t^{2Qcl}.
inline std::vector<TAFraction> qc_residual(const KnotParams& K, int N) {
  if (N < 1) throw InvalidArgument("N must be at least 1");
  const int Q = K.Q, P = K.P;
  std::vector<TAFraction> psi = wave_function(K, N);
  std::vector<TAFraction> out(static_cast<std::size_t>(N));
  parallel_for(out.size(), worker_count(), [&](int, std::size_t idx) {
    int l = static_cast<int>(idx) + 1, m = l - 1;
    TAFraction lhs = TAFraction(ta_monomial(1, -Q * l, 0) - ta_monomial(1, Q * l, 0)) * psi[static_cast<std::size_t>(l)];
    TAPoly shift = ta_monomial(1, -2 * P * m, P) * (ta_monomial(1, -Q * m, Q) - ta_monomial(1, Q * m, -Q));
    out[idx] = lhs - TAFraction(shift) * psi[static_cast<std::size_t>(m)];
  });
  return out;
}

/// Complete homogeneous symmetric function h_l at p_i = (A^i - A^{-i}) / (q^i - q^{-i}), q = t^Q,
/// summed over the power-sum expansion h_l = sum_lambda p_lambda / z_lambda.
inline TAFraction principal_h(const KnotParams& K, int l) {
  const int Q = K.Q;
  auto p = [&](int i) {
    return TAFraction(TAPoly(LaurentPoly::monomial(1, Q * i) - LaurentPoly::monomial(1, -Q * i)),
                      ta_monomial(1, Q * i, 0) - ta_monomial(1, -Q * i, 0));
  };
  TAFraction sum(0);
  for (const Partition& lam : partitions_of(l)) {
    TAFraction term(TAPoly(LaurentPoly(unit_inverse(z_factor(lam)))));
    for (int part : lam.parts()) term = term * p(part);
    sum = sum + term;
  }
  return sum;
}

/// Product formula for h_l at the principal specialization, before the sign change of hbar.
inline TAFraction principal_h_product(const KnotParams& K, int l) {
  const int Q = K.Q;
  TAPoly num(1), den(1);
  for (int i = 1; i <= l; ++i) {
    num *= ta_monomial(1, Q * (i - 1), Q) - ta_monomial(1, -Q * (i - 1), -Q);
    den *= ta_monomial(1, Q * i, 0) - ta_monomial(1, -Q * i, 0);
  }
  return TAFraction(num, den);
}

/// Wave-function checks: normalization, recursion ratio, annihilation and the hbar sign convention.
inline CheckReport qcurve_check(const KnotParams& K, int N, int oracle_l_max = 6) {
  Stopwatch sw;
  CheckReport r;
  r.suite = "qcurve";
  r.params = {{"Q", K.Q}, {"P", K.P}, {"N", N}};
  std::vector<TAFraction> psi = wave_function(K, N);
  r.add("psi_0 = 1", psi[0] == TAFraction(1));
  if (N >= 1) {
    TAFraction psi1(ta_monomial(1, 0, K.P + K.Q) - ta_monomial(1, 0, K.P - K.Q), ta_monomial(1, -K.Q, 0) - ta_monomial(1, K.Q, 0));
    r.add("psi_1 closed form", psi[1] == psi1, to_json(psi[1]));
  }
  bool nonzero = true, ratio = true;
  for (int l = 0; l <= N; ++l) nonzero = nonzero && !is_zero(psi[static_cast<std::size_t>(l)]);
  for (int l = 0; l < N; ++l)
    ratio = ratio && psi[static_cast<std::size_t>(l + 1)] == recursion_ratio(K, l) * psi[static_cast<std::size_t>(l)];
  r.add("psi_l nonzero for l <= N", nonzero);
  r.add("psi_{l+1} = ratio * psi_l for l < N", ratio);

  std::vector<TAFraction> res = qc_residual(K, N);
  Json bad = Json::array();
  for (std::size_t i = 0; i < res.size(); ++i)
    if (!is_zero(res[i])) bad.push_back(static_cast<int>(i) + 1);
  r.add("operator annihilates psi through Lambda^N", bad.empty(), bad.empty() ? Json(nullptr) : Json{{"nonzero_at", bad}});

  // Undoing hbar -> -hbar must give A^{lb} e^{hbar b kappa_(l)/2} h_l at the principal specialization.
  int L = std::min(N, oracle_l_max);
  std::vector<char> sign_ok(static_cast<std::size_t>(L + 1)), prod_ok(static_cast<std::size_t>(L + 1));
  parallel_for(sign_ok.size(), worker_count(), [&](int, std::size_t i) {
    int l = static_cast<int>(i);
    TAFraction h = principal_h(K, l);
    TAFraction framed = TAFraction(ta_monomial(1, K.P * (l * l - l), K.P * l)) * h;
    sign_ok[i] = invert_t(psi[i]) == framed;
    prod_ok[i] = h == principal_h_product(K, l);
  });
  bool s_ok = true, p_ok = true;
  for (std::size_t i = 0; i < sign_ok.size(); ++i) {
    s_ok = s_ok && sign_ok[i];
    p_ok = p_ok && prod_ok[i];
  }
  r.add("h_l power-sum expansion = product formula, l <= " + std::to_string(L), p_ok);
  r.add("t -> 1/t recovers the unflipped specialization, l <= " + std::to_string(L), s_ok);
  r.ms = sw.ms();
  return r;
}

/// The shift operator exp(hbar Lambda d/dLambda) dequantizes to V = (1 - A_+ U)/(1 - A_- U) on the curve.
inline Series<LaurentPoly> dequantized_V_series(const KnotParams& K, int order) {
  CurveData d = curve_data(K);
  return binomial_series(d.A_plus, Rational(1), order + 1) * binomial_series(d.A_minus, Rational(-1), order + 1);
}

/// Checks A^{b+1} (1 - A^{-2} V) Lambda = (1 - V) V^b as series in U through U^order, with Lambda(U) from the
/// curve parametrization and V^b computed as exp(b log V). Samples w give V = w^Q, so V^b = w^P is rational,
/// and Lambda^Q is compared with U^Q ((1 - A_+ U)/(1 - A_- U))^P at the preimage U of V, symbolically in Ahat.
inline CheckReport dequantization_check(const KnotParams& K, const std::vector<Rational>& samples, int order = 8) {
  Stopwatch sw;
  CheckReport r;
  r.suite = "dequantization";
  r.params = {{"Q", K.Q}, {"P", K.P}, {"order", order}};
  CurveData d = curve_data(K);
  using S = Series<LaurentPoly>;
  const int cap = order + 1;
  S one = S::constant(LaurentPoly(1), cap);
  S V = dequantized_V_series(K, order);
  S Lam = lambda_series(K, order);
  S Vb = series_exp(mul_scalar(series_log1p(V - one), K.b)).truncated(cap);
  S lhs = (one - V.scaled(K.A(-2))).scaled(d.A_plus) * Lam;
  S rhs = (one - V) * Vb;
  r.add("U = 0: Lambda = 0 and V = 1", is_zero(Lam.coeff(0)) && V.coeff(0) == LaurentPoly(1));
  bool first = true;
  for (int e = 0; e <= std::min(order, 3); ++e) first = first && lhs.coeff(e) == rhs.coeff(e);
  r.add("series agreement through U^3", first);
  r.add("series agreement through U^" + std::to_string(order), equal_to_common_cap(lhs.truncated(cap), rhs.truncated(cap)));

  if (K.Q == 1) {
    // Integral b: exact identity of rational functions in U.
    UPoly U = upoly_U(), o(1);
    UPoly Vn = o - U * upoly_const(d.A_plus), Vd = o - U * upoly_const(d.A_minus);
    UPoly pn(1), pd(1);
    for (int i = 0; i < K.P; ++i) {
      pn *= Vn;
      pd *= Vd;
    }
    UFraction lamU = UFraction(U * pn, pd);
    UFraction Vf(Vn, Vd), Vbf(pn, pd);
    UFraction lhs_f = UFraction(upoly_const(d.A_plus)) * (UFraction(1) - UFraction(upoly_const(K.A(-2))) * Vf) * lamU;
    UFraction rhs_f = (UFraction(1) - Vf) * Vbf;
    r.add("rational identity in U", lhs_f == rhs_f);
  }

  using F = Fraction<LaurentPoly>;
  Json failed = Json::array();
  for (const Rational& w : samples) {
    Rational V0 = 1, Vb0 = 1;
    for (int i = 0; i < K.Q; ++i) V0 *= w;
    for (int i = 0; i < K.P; ++i) Vb0 *= w;
    LaurentPoly denU = d.A_plus - d.A_minus * LaurentPoly(V0);
    LaurentPoly denL = d.A_plus * (LaurentPoly(1) - K.A(-2) * LaurentPoly(V0));
    if (is_zero(denU) || is_zero(denL)) throw SampleAtPole("sample w = " + w.short_str() + " is a pole");
    F U(LaurentPoly(1 - V0), denU);
    F lam(LaurentPoly((1 - V0) * Vb0), denL);
    F ratio = (F(1) - F(d.A_plus) * U) / (F(1) - F(d.A_minus) * U);
    F lhsQ(1), rhsQ(1);
    for (int i = 0; i < K.Q; ++i) {
      lhsQ = lhsQ * lam;
      rhsQ = rhsQ * U;
    }
    for (int i = 0; i < K.P; ++i) rhsQ = rhsQ * ratio;
    if (!(lhsQ == rhsQ)) failed.push_back(w.short_str());
  }
  r.add("sampled points lie on the curve (" + std::to_string(samples.size()) + " samples)", failed.empty(),
        failed.empty() ? Json(nullptr) : Json{{"failed", failed}});
  r.ms = sw.ms();
  return r;
}

}  // namespace knotfermion
