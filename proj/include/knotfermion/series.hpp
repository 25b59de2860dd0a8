#pragma once

#include <algorithm>
#include <climits>
#include <string>
#include <vector>

#include "laurent.hpp"
#include "rational.hpp"

namespace knotfermion {

/// Cap used for values that are known exactly (no truncation).
inline constexpr int kExactCap = 1 << 28;

inline Rational mul_scalar(const Rational& c, const Rational& s) { return c * s; }
template <class R>
Laurent<R> mul_scalar(const Laurent<R>& p, const Rational& s) {
  if (s.is_zero()) return {};
  std::vector<R> c = p.coeffs();
  for (auto& x : c) x = mul_scalar(x, s);
  return Laurent<R>::dense(p.lo(), std::move(c));
}

/// Truncated Laurent series in one formal variable x: coefficients of x^e for floor <= e < cap.
/// Every coefficient below the cap is exact; nothing is known at or above the cap.
template <class C>
class Series {
 public:
  using coeff_type = C;

  Series() = default;
  /// Zero series known below `cap`.
  Series(int floor, int cap) : floor_(std::min(floor, cap)), cap_(cap) {}

  static Series constant(const C& c, int cap = kExactCap) { return monomial(c, 0, cap); }
  static Series monomial(const C& c, int e, int cap = kExactCap) {
    if (e >= cap) return Series(cap, cap);
    Series s(e, cap);
    s.c_.push_back(c);
    return s;
  }

  int floor() const { return floor_; }
  /// Stored coefficients for exponents floor() .. stored_end() - 1.
  const std::vector<C>& raw() const { return c_; }
  int cap() const { return cap_; }
  /// Number of stored slots (only meaningful for finite caps).
  std::size_t stored() const { return c_.size(); }

  C coeff(int e) const {
    if (e >= cap_) throw PrecisionError("coefficient x^" + std::to_string(e) + " at or above cap " + std::to_string(cap_));
    if (e < floor_ || e - floor_ >= static_cast<int>(c_.size())) return C(0);
    return c_[static_cast<std::size_t>(e - floor_)];
  }
  void set(int e, const C& v) {
    if (e >= cap_) throw PrecisionError("set above cap");
    reserve_range(e);
    c_[static_cast<std::size_t>(e - floor_)] = v;
  }
  void add_to(int e, const C& v) {
    if (e >= cap_) return;
    reserve_range(e);
    c_[static_cast<std::size_t>(e - floor_)] += v;
  }

  /// Lowest exponent with a nonzero coefficient; cap if every known coefficient vanishes.
  int valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!is_zero(c_[i])) return floor_ + static_cast<int>(i);
    return cap_;
  }
  bool known_zero() const { return valuation() >= cap_; }
  /// Highest stored exponent + 1 (end of the stored block).
  int stored_end() const { return floor_ + static_cast<int>(c_.size()); }

  Series truncated(int cap) const {
    if (cap > cap_) throw PrecisionError("cannot raise cap from " + std::to_string(cap_) + " to " + std::to_string(cap));
    Series r = *this;
    r.cap_ = cap;
    if (r.floor_ > cap) r.floor_ = cap;
    long keep = std::max(0, cap - r.floor_);
    if (static_cast<long>(r.c_.size()) > keep) r.c_.resize(static_cast<std::size_t>(keep));
    return r;
  }
  /// Removes leading and trailing zero slots.
  Series& compact() {
    int v = valuation();
    if (v >= cap_) {
      c_.clear();
      floor_ = std::min(floor_, cap_);
      return *this;
    }
    std::size_t b = static_cast<std::size_t>(v - floor_);
    std::size_t e = c_.size();
    while (e > b && is_zero(c_[e - 1])) --e;
    c_ = std::vector<C>(c_.begin() + static_cast<long>(b), c_.begin() + static_cast<long>(e));
    floor_ = v;
    return *this;
  }

  Series operator-() const {
    Series r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  Series& operator+=(const Series& o) { return accumulate(o, false); }
  Series& operator-=(const Series& o) { return accumulate(o, true); }
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }

  friend Series operator*(const Series& a, const Series& b) { return a.mul(b); }

  /// Product with a series over a scalar ring D acting on C (D = C or Rational).
  template <class D>
  Series mul(const Series<D>& b) const {
    const Series& a = *this;
    int va = a.valuation(), vb = b.valuation();
    long capl = std::min(static_cast<long>(a.cap_) + vb, static_cast<long>(b.cap()) + va);
    int cap = static_cast<int>(std::min<long>(capl, kExactCap));
    if (va >= a.cap_ || vb >= b.cap()) return Series(std::min(cap, va + vb), cap);
    int fl = va + vb;
    if (fl >= cap) return Series(cap, cap);
    int ea = a.stored_end(), eb = b.stored_end();
    int hi = std::min(cap, ea + eb - 1);
    Series r(fl, hi);
    r.c_.assign(static_cast<std::size_t>(std::max(0, hi - fl)), C(0));
    r.cap_ = cap;
    const auto& bc = b.raw();
    for (int i = va; i < ea; ++i) {
      const C& x = a.c_[static_cast<std::size_t>(i - a.floor_)];
      if (is_zero(x)) continue;
      int jmax = std::min(eb, hi - i);
      for (int j = vb; j < jmax; ++j) {
        const D& y = bc[static_cast<std::size_t>(j - b.floor())];
        if (is_zero(y)) continue;
        if constexpr (std::is_same_v<C, D>)
          r.c_[static_cast<std::size_t>(i + j - fl)] += x * y;
        else
          r.c_[static_cast<std::size_t>(i + j - fl)] += mul_scalar(x, y);
      }
    }
    return r;
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  Series scaled(const C& s) const {
    Series r = *this;
    for (auto& c : r.c_) c = c * s;
    return r;
  }
  Series scaled(const Rational& s) const
    requires(!std::is_same_v<C, Rational>)
  {
    Series r = *this;
    for (auto& c : r.c_) c = mul_scalar(c, s);
    return r;
  }
  /// Multiplication by x^k.
  Series shifted(int k) const {
    Series r = *this;
    r.floor_ += k;
    r.cap_ = cap_ >= kExactCap ? kExactCap : cap_ + k;
    return r;
  }

  /// Applies f to every coefficient (e.g. specialization of an inner variable).
  template <class F>
  auto map(F f) const {
    using D = decltype(f(std::declval<C>()));
    Series<D> r(floor_, cap_);
    for (std::size_t i = 0; i < c_.size(); ++i) r.set(floor_ + static_cast<int>(i), f(c_[i]));
    return r;
  }

  /// Exact equality of every coefficient below the common cap; caps must agree.
  friend bool operator==(const Series& a, const Series& b) {
    if (a.cap_ != b.cap_) return false;
    int lo = std::min(a.floor_, b.floor_);
    int hi = std::max(a.stored_end(), b.stored_end());
    for (int e = lo; e < hi && e < a.cap_; ++e)
      if (!(a.coeff(e) == b.coeff(e))) return false;
    return true;
  }

 private:
  void reserve_range(int e) {
    if (e < floor_) {
      c_.insert(c_.begin(), static_cast<std::size_t>(floor_ - e), C(0));
      floor_ = e;
    }
    if (e - floor_ >= static_cast<int>(c_.size())) c_.resize(static_cast<std::size_t>(e - floor_ + 1), C(0));
  }
  Series& accumulate(const Series& o, bool negate) {
    int cap = std::min(cap_, o.cap_);
    if (cap < cap_) *this = truncated(cap);
    for (int e = o.floor_; e < o.stored_end() && e < cap; ++e) {
      const C& y = o.c_[static_cast<std::size_t>(e - o.floor_)];
      if (is_zero(y)) continue;
      reserve_range(e);
      auto& t = c_[static_cast<std::size_t>(e - floor_)];
      if (negate)
        t -= y;
      else
        t += y;
    }
    return *this;
  }

  int floor_ = 0;
  int cap_ = 0;
  std::vector<C> c_;
};

template <class C>
bool is_zero(const Series<C>& s) {
  return s.known_zero();
}

/// Exact equality of two series on [.., min cap).
template <class C>
bool equal_to_common_cap(const Series<C>& a, const Series<C>& b) {
  int cap = std::min(a.cap(), b.cap());
  return a.truncated(cap) == b.truncated(cap);
}

/// Multiplicative inverse. The lowest nonzero coefficient must be a unit.
template <class C>
Series<C> series_inverse(const Series<C>& s) {
  int v = s.valuation();
  if (v >= s.cap()) throw NonInvertibleLeadingTerm("series has no known nonzero term");
  C b0 = unit_inverse(s.coeff(v));
  int n = s.cap() >= kExactCap ? kExactCap : s.cap() - v;
  if (n >= kExactCap) throw PrecisionError("inverse of an untruncated series needs an explicit cap");
  std::vector<C> a(static_cast<std::size_t>(n), C(0));
  for (int k = 0; k < n && v + k < s.stored_end(); ++k) a[static_cast<std::size_t>(k)] = s.coeff(v + k);
  std::vector<C> b(static_cast<std::size_t>(n), C(0));
  b[0] = b0;
  for (int k = 1; k < n; ++k) {
    C acc(0);
    for (int j = 1; j <= k; ++j)
      if (!is_zero(a[static_cast<std::size_t>(j)])) acc += a[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
    b[static_cast<std::size_t>(k)] = -(acc * b0);
  }
  Series<C> r(-v, -v + n);
  for (int k = 0; k < n; ++k) r.set(-v + k, b[static_cast<std::size_t>(k)]);
  return r;
}

/// Raises the cap of an exactly known power series to `cap` (for untruncated operands).
template <class C>
Series<C> with_cap(const Series<C>& s, int cap) {
  if (cap <= s.cap()) return s.truncated(cap);
  if (s.cap() < kExactCap) throw PrecisionError("cannot extend a truncated series");
  Series<C> r(std::min(s.floor(), cap), cap);
  for (int e = s.floor(); e < s.stored_end() && e < cap; ++e) r.set(e, s.coeff(e));
  return r;
}

/// exp(s) for s with positive valuation.
template <class C>
Series<C> series_exp(const Series<C>& s) {
  if (s.valuation() < 1) throw BadValuation("exp needs a series of positive valuation");
  int cap = s.cap();
  if (cap >= kExactCap) throw PrecisionError("exp of an untruncated series needs an explicit cap");
  std::vector<C> e(static_cast<std::size_t>(std::max(cap, 1)), C(0));
  e[0] = C(1);
  for (int k = 1; k < cap; ++k) {
    C acc(0);
    for (int j = 1; j <= k; ++j) {
      if (j >= s.stored_end()) break;
      C sj = s.coeff(j);
      if (is_zero(sj)) continue;
      acc += mul_scalar(sj * e[static_cast<std::size_t>(k - j)], Rational(j));
    }
    e[static_cast<std::size_t>(k)] = mul_scalar(acc, Rational(1, k));
  }
  Series<C> r(0, cap);
  for (int k = 0; k < cap; ++k) r.set(k, e[static_cast<std::size_t>(k)]);
  return r;
}

/// log(1 + s) for s with positive valuation.
template <class C>
Series<C> series_log1p(const Series<C>& s) {
  if (s.valuation() < 1) throw BadValuation("log1p needs a series of positive valuation");
  int cap = s.cap();
  if (cap >= kExactCap) throw PrecisionError("log1p of an untruncated series needs an explicit cap");
  Series<C> l(1, std::max(cap, 1));
  for (int k = 1; k < cap; ++k) {
    C acc(0);
    for (int j = 1; j < k; ++j) {
      C sj = s.coeff(j);
      if (is_zero(sj)) continue;
      acc += mul_scalar(sj * l.coeff(k - j), Rational(k - j));
    }
    l.set(k, s.coeff(k) - mul_scalar(acc, Rational(1, k)));
  }
  return l;
}

/// Composition f(g) for a power series f (floor >= 0) and g of positive valuation.
template <class C>
Series<C> series_compose(const Series<C>& f, const Series<C>& g) {
  if (f.valuation() < 0) throw BadValuation("outer series of a composition must be a power series");
  int vg = g.valuation();
  if (vg < 1) throw BadValuation("inner series of a composition must have positive valuation");
  // truncation of g is propagated by the product precision tracking in the Horner loop
  int top = std::min(f.stored_end(), f.cap()) - 1;
  // the unknown tail of f enters Horner's scheme multiplied by g^{top+1}
  long tail = f.cap() >= kExactCap ? kExactCap : (static_cast<long>(f.cap()) - top - 1) * vg;
  Series<C> r(0, static_cast<int>(std::min<long>(tail, kExactCap)));
  for (int k = top; k >= 0; --k) r = r * g + Series<C>::constant(f.coeff(k));
  return r;
}

/// Lagrange reversion: given s with s(0) = 0 and a unit linear coefficient, returns r with
/// s(r(y)) = y + O(y^{order+1}).
template <class C>
Series<C> lagrange_revert(const Series<C>& s, int order) {
  if (s.valuation() != 1) throw BadValuation("reversion needs valuation exactly 1");
  if (s.cap() < order + 1) throw PrecisionError("series known only below x^" + std::to_string(s.cap()));
  Series<C> t = s.truncated(order + 1).shifted(-1);  // s / x
  Series<C> h = series_inverse(t);                      // x / s
  Series<C> r(1, order + 1);
  Series<C> hp = Series<C>::constant(C(1), order);
  for (int n = 1; n <= order; ++n) {
    hp = (hp * h).truncated(order);
    r.set(n, mul_scalar(hp.coeff(n - 1), Rational(1, n)));
  }
  return r;
}

/// u-expansion of zeta(c u) = e^{cu/2} - e^{-cu/2}, coefficients for floor <= e < cap.
inline Series<Rational> zeta_series(const Rational& c, int floor, int cap) {
  Series<Rational> s(std::min(floor, cap), cap);
  if (c.is_zero()) return s;
  Rational p = c;  // c^j / (2^{j-1} j!)
  for (int j = 1; j < cap; j += 2) {
    if (j >= floor) s.set(j, p);
    p = p * c * c / Rational(4 * (j + 1) * (j + 2));
  }
  return s;
}
inline Series<Rational> zeta_series(const Rational& c, int cap) { return zeta_series(c, 0, cap); }

/// zeta(c u)/(c u) as a power series with constant term 1 (c != 0).
inline Series<Rational> zeta_over_arg_series(const Rational& c, int cap) {
  Series<Rational> s(0, cap);
  Rational p = 1;
  for (int j = 0; j < cap; j += 2) {
    s.set(j, p);
    p = p * c * c / Rational(4 * (j + 2) * (j + 3));
  }
  return s;
}

/// e^{c u} to the given cap.
inline Series<Rational> exp_series(const Rational& c, int cap) {
  Series<Rational> s(0, std::max(cap, 0));
  Rational p = 1;
  for (int j = 0; j < cap; ++j) {
    s.set(j, p);
    p = p * c / Rational(j + 1);
  }
  return s;
}

/// (1 - c x)^e with generalized binomial coefficients, exponents 0 <= k < order.
template <class C>
Series<C> binomial_series(const C& c, const Rational& e, int order) {
  Series<C> s(0, order);
  C cp(1);
  Rational bin = 1;
  for (int k = 0; k < order; ++k) {
    Rational coef = (k % 2 == 0) ? bin : -bin;
    s.set(k, mul_scalar(cp, coef));
    cp = cp * c;
    bin = bin * (e - Rational(k)) / Rational(k + 1);
  }
  return s;
}

/// Lifts a rational-coefficient series into another coefficient ring.
template <class C>
Series<C> lift(const Series<Rational>& s) {
  return s.map([](const Rational& r) { return C(r); });
}

template <class C>
Series<C> mul_scalar(const Series<C>& s, const Rational& r) {
  return s.scaled(r);
}

using USeries = Series<LaurentPoly>;

}  // namespace knotfermion
