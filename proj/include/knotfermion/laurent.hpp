#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace knotfermion {

/// Laurent polynomial in one variable over a commutative ring R.
/// Stored densely from the lowest to the highest nonzero exponent; zero ends are trimmed.
template <class R>
class Laurent {
 public:
  using coeff_type = R;

  Laurent() = default;
  Laurent(const R& c) {
    if (!is_zero(c)) c_.push_back(c);
  }
  Laurent(int v) : Laurent(R(v)) {}

  static Laurent monomial(const R& c, int e) {
    Laurent p(c);
    p.lo_ = e;
    if (p.c_.empty()) p.lo_ = 0;
    return p;
  }
  static Laurent var(int e = 1) { return monomial(R(1), e); }
  static Laurent from_map(const std::map<int, R>& m) {
    Laurent p;
    if (m.empty()) return p;
    p.lo_ = m.begin()->first;
    p.c_.assign(static_cast<std::size_t>(m.rbegin()->first - p.lo_ + 1), R(0));
    for (const auto& [e, c] : m) p.c_[static_cast<std::size_t>(e - p.lo_)] = c;
    p.trim();
    return p;
  }
  /// Builds from a dense coefficient list starting at exponent lo.
  static Laurent dense(int lo, std::vector<R> coeffs) {
    Laurent p;
    p.lo_ = lo;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
  }

  bool zero() const { return c_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  std::size_t span() const { return c_.size(); }
  const std::vector<R>& coeffs() const { return c_; }

  R coeff(int e) const {
    if (c_.empty() || e < lo_ || e > hi()) return R(0);
    return c_[static_cast<std::size_t>(e - lo_)];
  }

  /// Nonzero terms as (exponent, coefficient), increasing exponent.
  std::vector<std::pair<int, R>> terms() const {
    std::vector<std::pair<int, R>> out;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!is_zero(c_[i])) out.emplace_back(lo_ + static_cast<int>(i), c_[i]);
    return out;
  }

  bool is_monomial() const {
    if (c_.empty()) return false;
    return c_.size() == 1;
  }
  bool is_constant() const { return c_.empty() || (c_.size() == 1 && lo_ == 0); }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  Laurent& operator+=(const Laurent& o) { return accumulate(o, false); }
  Laurent& operator-=(const Laurent& o) { return accumulate(o, true); }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    if (a.c_.empty() || b.c_.empty()) return r;
    r.lo_ = a.lo_ + b.lo_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, R(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (is_zero(b.c_[j])) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    r.trim();
    return r;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

  /// Multiplication by a ring scalar.
  Laurent scaled(const R& s) const {
    if (is_zero(s)) return Laurent();
    Laurent r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
  }
  /// Multiplication by x^k.
  Laurent shifted(int k) const {
    Laurent r = *this;
    if (!r.c_.empty()) r.lo_ += k;
    return r;
  }
  /// Substitutes x -> x^k for a nonzero integer k.
  Laurent subs_power(int k) const {
    if (k == 0) throw InvalidArgument("subs_power with k = 0");
    std::map<int, R> m;
    for (auto& [e, c] : terms()) m[e * k] += c;
    return from_map(m);
  }
  /// Formal derivative d/dx.
  Laurent derivative() const {
    std::map<int, R> m;
    for (auto& [e, c] : terms())
      if (e != 0) m[e - 1] += c * R(e);
    return from_map(m);
  }

  friend bool operator==(const Laurent& a, const Laurent& b) { return a.lo_ == b.lo_ && a.c_ == b.c_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

  /// Leading (highest-exponent) coefficient; zero for the zero polynomial.
  R leading() const { return c_.empty() ? R(0) : c_.back(); }
  R trailing() const { return c_.empty() ? R(0) : c_.front(); }

 private:
  Laurent& accumulate(const Laurent& o, bool negate) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) {
      *this = negate ? -o : o;
      return *this;
    }
    int nlo = std::min(lo_, o.lo_);
    int nhi = std::max(hi(), o.hi());
    if (nlo < lo_ || nhi > hi()) {
      std::vector<R> nc(static_cast<std::size_t>(nhi - nlo + 1), R(0));
      for (std::size_t i = 0; i < c_.size(); ++i) nc[i + static_cast<std::size_t>(lo_ - nlo)] = std::move(c_[i]);
      c_ = std::move(nc);
      lo_ = nlo;
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
      auto& t = c_[i + static_cast<std::size_t>(o.lo_ - lo_)];
      if (negate)
        t -= o.c_[i];
      else
        t += o.c_[i];
    }
    trim();
    return *this;
  }

  void trim() {
    std::size_t b = 0;
    while (b < c_.size() && is_zero(c_[b])) ++b;
    if (b == c_.size()) {
      c_.clear();
      lo_ = 0;
      return;
    }
    std::size_t e = c_.size();
    while (is_zero(c_[e - 1])) --e;
    if (b > 0 || e < c_.size()) {
      c_ = std::vector<R>(std::make_move_iterator(c_.begin() + static_cast<long>(b)), std::make_move_iterator(c_.begin() + static_cast<long>(e)));
      lo_ += static_cast<int>(b);
    }
  }

  int lo_ = 0;
  std::vector<R> c_;
};

template <class R>
bool is_zero(const Laurent<R>& p) {
  return p.zero();
}

template <class R>
Laurent<R> operator*(const Laurent<R>& p, const Rational& s)
  requires(!std::is_same_v<R, Rational>)
{
  std::vector<R> c = p.coeffs();
  for (auto& x : c) x = x * s;
  return Laurent<R>::dense(p.lo(), std::move(c));
}

/// Inverse of a unit: a monomial whose coefficient is itself a unit.
inline Rational unit_inverse(const Rational& r) {
  if (r.is_zero()) throw NonInvertibleLeadingTerm("zero is not a unit");
  return r.inverse();
}
template <class R>
Laurent<R> unit_inverse(const Laurent<R>& p) {
  if (!p.is_monomial()) throw NonInvertibleLeadingTerm("Laurent polynomial is not a monomial");
  return Laurent<R>::monomial(unit_inverse(p.coeff(p.lo())), -p.lo());
}

/// Evaluates at a nonzero rational point.
inline Rational evaluate(const Laurent<Rational>& p, const Rational& x) {
  if (p.zero()) return 0;
  Rational r = 0;
  for (int e = p.hi(); e >= p.lo(); --e) r = r * x + p.coeff(e);
  if (p.lo() != 0) r *= x.pow(p.lo());
  return r;
}

using LaurentPoly = Laurent<Rational>;

inline std::string to_string(const LaurentPoly& p, const std::string& var = "x") {
  if (p.zero()) return "0";
  std::string s;
  for (auto& [e, c] : p.terms()) {
    std::string cs = c.short_str();
    if (!s.empty()) s += (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) s += "-";
    Rational ac = c.sign() < 0 ? -c : c;
    if (e == 0) s += ac.short_str();
    else {
      if (!ac.is_one()) s += ac.short_str() + "*";
      s += var;
      if (e != 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

}  // namespace knotfermion
