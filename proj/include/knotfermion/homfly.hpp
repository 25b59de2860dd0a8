#pragma once

#include <map>
#include <vector>

#include "knot.hpp"
#include "partitions.hpp"
#include "series.hpp"

namespace knotfermion {

/// 1/zeta(c u) with exponents below `cap`.
inline Series<Rational> inverse_zeta_series(const Rational& c, int cap) {
  if (c.is_zero()) throw DivisionByZero("1/zeta(0)");
  return series_inverse(zeta_series(c, 0, cap + 2));
}

/// p*_i = (A^i - A^{-i}) / zeta(i u / b), floor -1.
inline USeries topological_locus(const KnotParams& K, int i, int cap) {
  if (i < 1) throw InvalidArgument("topological locus index must be positive");
  LaurentPoly num = K.A(i) - K.A(-i);
  Series<Rational> iz = inverse_zeta_series(Rational(i) / K.b, cap);
  return iz.map([&](const Rational& r) { return num.scaled(r); });
}

/// Extended colored HOMFLY-PT polynomial H_R in spectral framing, as a power-sum polynomial
/// with u-series coefficients: A^{P|R|} sum_{R1} c^{R1}_R e^{u kappa(R1)} s_{R1}(p).
inline PowerSumPoly<USeries> homfly_extended(const KnotParams& K, const Partition& R, int cap) {
  PowerSumPoly<USeries> out;
  LaurentPoly pref = K.Ab(K.Q * R.weight());  // A^{P|R|} = Ahat^{PQ|R|}
  for (const auto& [r1, c] : adams_coefficients(R, K.Q)) {
    Series<Rational> ek = exp_series(Rational(kappa(r1)), cap);
    USeries coeff = ek.map([&](const Rational& x) { return pref.scaled(x * Rational(c)); });
    for (const auto& [s, v] : schur_in_power_sums(r1)) add_term(out, s, coeff.scaled(v));
  }
  return out;
}

/// Evaluates power-sum monomials on the topological locus, caching p_sigma(p*).
class LocusEvaluator {
 public:
  LocusEvaluator(const KnotParams& K, int cap) : K_(K), cap_(cap) {}

  const USeries& pstar(int i) {
    auto it = ps_.find(i);
    if (it != ps_.end()) return it->second;
    return ps_.emplace(i, topological_locus(K_, i, cap_)).first->second;
  }
  /// p_sigma(p*) known below cap - length(sigma) + 1 ... tracked automatically.
  const USeries& monomial(const Partition& s) {
    auto it = mono_.find(s);
    if (it != mono_.end()) return it->second;
    USeries r = USeries::constant(LaurentPoly(1));
    for (int p : s.parts()) r = r * pstar(p);
    return mono_.emplace(s, r).first->second;
  }
  template <class C>
  USeries evaluate(const PowerSumPoly<C>& f, int cap);

 private:
  KnotParams K_;
  int cap_;
  std::map<int, USeries> ps_;
  std::map<Partition, USeries> mono_;
};

template <>
inline USeries LocusEvaluator::evaluate(const PowerSumPoly<USeries>& f, int cap) {
  USeries acc(0, cap);
  for (const auto& [s, c] : f) acc += (c * monomial(s)).truncated(cap);
  return acc;
}
template <>
inline USeries LocusEvaluator::evaluate(const PowerSumPoly<Series<Rational>>& f, int cap) {
  USeries acc(0, cap);
  for (const auto& [s, c] : f) acc += (lift<LaurentPoly>(c) * monomial(s)).truncated(cap);
  return acc;
}
template <>
inline USeries LocusEvaluator::evaluate(const PowerSumPoly<Rational>& f, int cap) {
  USeries acc(0, cap);
  for (const auto& [s, c] : f) acc += monomial(s).scaled(c).truncated(cap);
  return acc;
}

namespace detail {
inline void check_cap(int cap) {
  if (cap < 1) throw CapTooSmall("u-cap must be at least 1, got " + std::to_string(cap));
}
inline Rational prod_parts(const Partition& mu) {
  Rational r = 1;
  for (int p : mu.parts()) r *= Rational(p);
  return r;
}
}  // namespace detail

/// K_mu from colored HOMFLY-PT data. When every part of mu is divisible by Q the Adams route
/// through H_R is used; otherwise the extended Schur sum over lambda |- |mu| is used.
inline USeries ov_coefficient_rossojones(const KnotParams& K, const Partition& mu, int cap) {
  detail::check_cap(cap);
  if (mu.empty()) return USeries::constant(LaurentPoly(1), cap);
  int W = mu.weight(), n = mu.length();
  LocusEvaluator ev(K, cap + W);
  bool divisible = true;
  for (int p : mu.parts()) divisible = divisible && (p % K.Q == 0);
  USeries acc(0, cap);
  if (divisible) {
    std::vector<int> nu;
    for (int p : mu.parts()) nu.push_back(p / K.Q);
    Partition nup(nu);
    Rational pref = Rational(K.Q).pow(-n) / detail::prod_parts(nup);
    for (const auto& R : partitions_of(nup.weight())) {
      long chi = mn_character(R, nup);
      if (chi == 0) continue;
      USeries h = ev.evaluate(homfly_extended(K, R, cap + W), cap);
      acc += h.scaled(pref * Rational(chi));
    }
  } else {
    Rational pref = Rational(1) / detail::prod_parts(mu);
    for (const auto& lam : partitions_of(W)) {
      long chi = mn_character(lam, mu);
      if (chi == 0) continue;
      Series<Rational> ek = exp_series(Rational(kappa(lam)), cap + W);
      USeries s = ev.evaluate(schur_in_power_sums(lam), cap);
      acc += (lift<LaurentPoly>(ek) * s).truncated(cap).scaled(pref * Rational(chi));
    }
    acc = acc.scaled(K.Ab(W));
  }
  return acc;
}

/// K_mu from the cut-and-join description: A^{b|mu|}/prod(mu) * exp(u W2) p_mu at p = p*.
inline USeries ov_coefficient_cutjoin(const KnotParams& K, const Partition& mu, int cap) {
  detail::check_cap(cap);
  if (mu.empty()) return USeries::constant(LaurentPoly(1), cap);
  int W = mu.weight();
  int J = cap + W - 1;  // u^j W2^j p_mu contributes only from u^{j - |mu|} upward
  PowerSumPoly<Series<Rational>> total;
  PowerSumPoly<Rational> f{{mu, Rational(1)}};
  Rational jf = 1;
  for (int j = 0; j <= J; ++j) {
    if (j > 0) {
      f = cutjoin_apply(f);
      jf *= Rational(j);
    }
    for (const auto& [s, c] : f) {
      auto it = total.find(s);
      if (it == total.end()) it = total.emplace(s, Series<Rational>(0, J + 1)).first;
      it->second.add_to(j, c / jf);
    }
  }
  LocusEvaluator ev(K, cap + W);
  USeries r = ev.evaluate(total, cap);
  return r.scaled(K.Ab(W).scaled(Rational(1) / detail::prod_parts(mu)));
}

}  // namespace knotfermion
