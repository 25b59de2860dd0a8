#pragma once

#include <functional>
#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include "homfly.hpp"
#include "knot.hpp"
#include "partitions.hpp"
#include "series.hpp"

namespace knotfermion {

/// Operator token E~_n(c u) (tilde) or E_n(c u) (non-tilde, which adds delta_{n,0}/zeta(c u)).
struct EOp {
  int energy = 0;
  Rational arg = 0;
  bool tilde = true;

  friend bool operator<(const EOp& x, const EOp& y) {
    return std::tie(x.energy, x.arg, x.tilde) < std::tie(y.energy, y.arg, y.tilde);
  }
  friend bool operator==(const EOp& x, const EOp& y) { return x.energy == y.energy && x.arg == y.arg && x.tilde == y.tilde; }
};

/// Vacuum expectations of products of E-operators, with memoized recursion.
/// Values are series in u with rational coefficients, exact below `cap`.
class CorrelatorEngine {
 public:
  /// `depth` bounds the number of operators; internal caps are widened by it.
  CorrelatorEngine(int cap, int depth) : cap_(cap), work_(cap + depth + 1) {}

  int cap() const { return cap_; }

  Series<Rational> evaluate(const std::vector<EOp>& ops) { return eval(ops).truncated(cap_); }

  const Series<Rational>& zeta(const Rational& c) {
    auto it = zeta_.find(c);
    if (it != zeta_.end()) return it->second;
    return zeta_.emplace(c, zeta_series(c, 0, work_)).first->second;
  }
  const Series<Rational>& inv_zeta(const Rational& c) {
    auto it = izeta_.find(c);
    if (it != izeta_.end()) return it->second;
    return izeta_.emplace(c, inverse_zeta_series(c, work_)).first->second;
  }

 private:
  const Series<Rational>& eval(const std::vector<EOp>& ops) {
    auto it = memo_.find(ops);
    if (it != memo_.end()) return it->second;
    Series<Rational> r = compute(ops);
    return memo_.emplace(ops, std::move(r)).first->second;
  }

  Series<Rational> compute(const std::vector<EOp>& ops) {
    if (ops.empty()) return Series<Rational>::constant(1, work_);
    long esum = 0;
    for (const auto& o : ops) esum += o.energy;
    if (esum != 0) return Series<Rational>(0, work_);
    // split a non-tilde E_0 into E~_0 + 1/zeta
    for (std::size_t i = 0; i < ops.size(); ++i) {
      if (ops[i].energy == 0 && !ops[i].tilde) {
        if (ops[i].arg.is_zero()) throw DivisionByZero("E_0(0) is singular");
        std::vector<EOp> with = ops;
        with[i].tilde = true;
        std::vector<EOp> without = ops;
        without.erase(without.begin() + static_cast<long>(i));
        Series<Rational> r = eval(with);
        r += inv_zeta(ops[i].arg) * eval(without);
        return r;
      }
    }
    const EOp& first = ops.front();
    if (first.energy <= 0) return Series<Rational>(0, work_);
    // commute the leftmost positive-energy operator to the right, where it kills the vacuum
    Series<Rational> acc(0, work_);
    for (std::size_t j = 1; j < ops.size(); ++j) {
      const EOp& o = ops[j];
      Rational det = Rational(first.energy) * o.arg - Rational(o.energy) * first.arg;
      if (det.is_zero()) continue;
      std::vector<EOp> next;
      next.reserve(ops.size() - 1);
      for (std::size_t k = 1; k < ops.size(); ++k) {
        if (k == j)
          next.push_back(EOp{first.energy + o.energy, first.arg + o.arg, false});
        else
          next.push_back(ops[k]);
      }
      acc += zeta(det) * eval(next);
    }
    return acc;
  }

  int cap_;
  int work_;
  std::map<std::vector<EOp>, Series<Rational>> memo_;
  std::map<Rational, Series<Rational>> zeta_, izeta_;
};

/// <0| ops |0> below the given cap.
inline Series<Rational> e_correlator(const std::vector<EOp>& ops, int cap) {
  CorrelatorEngine eng(cap, static_cast<int>(ops.size()));
  return eng.evaluate(ops);
}

/// Coefficient models for the A~-operator expansion.
/// FullModel: coefficients in Q[Ahat, Ahat^-1], giving K_mu itself.
/// ReducedModel: coefficients polynomial in a = A^2, giving K_mu / A^{(b-1)|mu|}.
/// SpecializedModel: the reduced model at a rational value of a.
struct FullModel {
  using C = LaurentPoly;
  KnotParams K;
  C pstar_numer(int i) const { return K.A(i) - K.A(-i); }
  C weight(int m) const { return K.Ab(m); }
};
struct ReducedModel {
  using C = LaurentPoly;
  KnotParams K;
  C pstar_numer(int i) const { return LaurentPoly::monomial(1, i) - LaurentPoly(1); }
  C weight(int) const { return LaurentPoly(1); }
};
struct SpecializedModel {
  using C = Rational;
  KnotParams K;
  Rational a;
  C pstar_numer(int i) const { return a.pow(i) - Rational(1); }
  C weight(int) const { return Rational(1); }
};

/// zeta(i u m) / zeta(i u / b) = m b * S(i m u) / S(i u / b) with S(z) = zeta(z)/z.
inline Series<Rational> zeta_ratio_series(const Rational& rho, int i, const Rational& b, int cap) {
  Series<Rational> num = zeta_over_arg_series(Rational(i) * rho, cap);
  Series<Rational> den = zeta_over_arg_series(Rational(i) / b, cap);
  return (num * series_inverse(den)).scaled(rho * b);
}

/// Scalars multiplying E_{k-m}(u m) in A~(m, u m): coeffs[k] = weight(m)/m * [w^k] exp(sum_i x_i w^i),
/// x_i = pstar_numer(i)/i * zeta(i u m)/zeta(i u/b).
template <class Model>
class AtildeCoeffs {
 public:
  using C = typename Model::C;
  AtildeCoeffs(const Model& model, int m, int cap) : model_(model), m_(m), cap_(cap) {
    if (m < 1) throw InvalidArgument("A~ operator index must be positive");
    E_.push_back(Series<C>::constant(C(1), cap));
  }
  int m() const { return m_; }
  int cap() const { return cap_; }
  /// [w^k] exp(sum x_i w^i), without the weight(m)/m prefactor.
  const Series<C>& raw(int k) {
    while (static_cast<int>(E_.size()) <= k) extend();
    return E_[static_cast<std::size_t>(k)];
  }
  Series<C> coeff(int k) { return raw(k).scaled(prefactor()); }
  C prefactor() const { return mul_scalar(model_.weight(m_), Rational(1, m_)); }

 private:
  /// i * x_i = pstar_numer(i) * zeta(i u m)/zeta(i u/b).
  const Series<C>& ix(int i) {
    while (static_cast<int>(ix_.size()) < i) {
      int j = static_cast<int>(ix_.size()) + 1;
      Series<Rational> ratio = zeta_ratio_series(Rational(m_), j, model_.K.b, cap_);
      C base = model_.pstar_numer(j);
      ix_.push_back(ratio.map([&](const Rational& r) { return mul_scalar(base, r); }));
    }
    return ix_[static_cast<std::size_t>(i - 1)];
  }
  void extend() {
    int k = static_cast<int>(E_.size());
    // k E_k = sum_{i=1}^k (i x_i) E_{k-i}
    Series<C> acc(0, cap_);
    for (int i = 1; i <= k; ++i) acc += ix(i) * E_[static_cast<std::size_t>(k - i)];
    E_.push_back(acc.scaled(Rational(1, k)));
  }

  Model model_;
  int m_;
  int cap_;
  std::vector<Series<C>> ix_;
  std::vector<Series<C>> E_;
};

/// Computes K_mu = < prod_i A~(mu_i, u mu_i) > for a fixed model and output cap,
/// reusing A~ coefficients and correlator memo across calls.
template <class Model>
class KmuEngine {
 public:
  using C = typename Model::C;
  /// Results are exact below `cap` for tuples with at most `max_parts` entries.
  /// Disconnected pieces are computed max_parts - 1 orders deeper, since each factor may carry u^{-1}.
  KmuEngine(const Model& model, int cap, int max_parts)
      : model_(model), cap_(cap), max_parts_(max_parts), kcap_(cap + std::max(max_parts, 1) - 1), corr_(kcap_, max_parts) {}

  const Model& model() const { return model_; }
  int cap() const { return cap_; }

  AtildeCoeffs<Model>& coeffs(int m, int depth) {
    auto it = coeffs_.find(m);
    if (it == coeffs_.end()) it = coeffs_.emplace(m, AtildeCoeffs<Model>(model_, m, kcap_ + depth)).first;
    return it->second;
  }

  /// K_mu for the ordered tuple mu (empty tuple gives 1).
  Series<C> K(const std::vector<int>& mu) { return Kdeep(mu).truncated(cap_); }

  /// K_mu known below the internal cap used for connected correlators.
  Series<C> Kdeep(const std::vector<int>& mu) {
    int n = static_cast<int>(mu.size());
    if (n == 0) return Series<C>::constant(C(1), kcap_);
    int total = 0;
    for (int p : mu) total += p;
    if (n > max_parts_) throw InvalidArgument("tuple longer than the engine depth");
    int depth = max_parts_;
    std::vector<AtildeCoeffs<Model>*> A;
    for (int p : mu) A.push_back(&coeffs(p, depth));
    Series<C> acc(0, kcap_);
    std::vector<int> k(static_cast<std::size_t>(n), 0);
    std::vector<EOp> ops(static_cast<std::size_t>(n));
    // enumerate compositions k_1 + ... + k_n = total
    std::function<void(int, int, const Series<C>*)> rec;
    std::vector<Series<C>> partial(static_cast<std::size_t>(n));
    rec = [&](int i, int rest, const Series<C>* prod) {
      if (i == n - 1) {
        k[static_cast<std::size_t>(i)] = rest;
        for (int j = 0; j < n; ++j)
          ops[static_cast<std::size_t>(j)] = EOp{k[static_cast<std::size_t>(j)] - mu[static_cast<std::size_t>(j)], Rational(mu[static_cast<std::size_t>(j)]), false};
        if (ops[0].energy < 0) return;
        Series<Rational> c = corr_.evaluate(ops);
        if (c.known_zero()) return;
        const Series<C>& last = A[static_cast<std::size_t>(i)]->raw(rest);
        Series<C> term = prod ? (*prod * last) : last;
        acc += term.mul(c).truncated(kcap_);
        return;
      }
      for (int ki = 0; ki <= rest; ++ki) {
        k[static_cast<std::size_t>(i)] = ki;
        if (i == 0 && ki - mu[0] < 0) continue;  // leftmost negative energy annihilates the covacuum
        const Series<C>& e = A[static_cast<std::size_t>(i)]->raw(ki);
        if (e.known_zero()) continue;
        partial[static_cast<std::size_t>(i)] = prod ? (*prod * e) : e;
        rec(i + 1, rest - ki, &partial[static_cast<std::size_t>(i)]);
      }
    };
    rec(0, total, nullptr);
    C pref(1);
    for (auto* a : A) pref = pref * a->prefactor();
    return acc.scaled(pref);
  }

  /// Connected correlator by inclusion-exclusion over set partitions of the slots.
  Series<C> connected(const std::vector<int>& mu) {
    int n = static_cast<int>(mu.size());
    Series<C> acc(0, cap_);
    std::vector<int> block(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int i, int nb) {
      if (i == n) {
        Series<C> prod = Series<C>::constant(C(1));
        for (int bidx = 0; bidx < nb; ++bidx) {
          std::vector<int> sub;
          for (int j = 0; j < n; ++j)
            if (block[static_cast<std::size_t>(j)] == bidx) sub.push_back(mu[static_cast<std::size_t>(j)]);
          prod = prod * Kcached(sub);
        }
        Rational coef = factorial(nb - 1);
        if ((nb - 1) % 2) coef = -coef;
        acc += prod.truncated(cap_).scaled(coef);
        return;
      }
      for (int bidx = 0; bidx <= nb; ++bidx) {
        block[static_cast<std::size_t>(i)] = bidx;
        rec(i + 1, bidx == nb ? nb + 1 : nb);
      }
    };
    rec(0, 0);
    return acc;
  }

  /// K_mu for a sorted copy of mu, memoized (K_mu is symmetric in mu).
  const Series<C>& Kcached(std::vector<int> mu) {
    std::sort(mu.begin(), mu.end(), std::greater<int>());
    auto it = kmemo_.find(mu);
    if (it != kmemo_.end()) return it->second;
    return kmemo_.emplace(mu, Kdeep(mu)).first->second;
  }

 private:
  Model model_;
  int cap_;
  int max_parts_;
  int kcap_;
  CorrelatorEngine corr_;
  std::map<int, AtildeCoeffs<Model>> coeffs_;
  std::map<std::vector<int>, Series<C>> kmemo_;
};

/// K_mu(u) below `cap` via the fermionic A~-operator correlator.
inline USeries K_mu(const Partition& mu, const KnotParams& K, int cap) {
  detail::check_cap(cap);
  KmuEngine<FullModel> eng(FullModel{K}, cap, std::max(1, mu.length()));
  return eng.K(mu.parts());
}

/// Connected correlator K°_mu below `cap`.
inline USeries connected_K(const Partition& mu, const KnotParams& K, int cap) {
  detail::check_cap(cap);
  KmuEngine<FullModel> eng(FullModel{K}, cap, std::max(1, mu.length()));
  return eng.connected(mu.parts());
}

/// C^{(g)}_mu = Q^n b^{2g-2+n} [u^{2g-2+n}] K°_mu, i.e. the coefficient of hbar^{2g-2+n}.
inline LaurentPoly C_g(int g, const Partition& mu, const KnotParams& K) {
  int n = mu.length();
  int j = 2 * g - 2 + n;
  if (n < 1 || j < -1) throw StabilityRange("2g-2+n must be at least -1");
  USeries c = connected_K(mu, K, std::max(j + 1, 1));
  return c.coeff(j).scaled(Rational(K.Q).pow(n) * K.b.pow(j));
}

}  // namespace knotfermion
