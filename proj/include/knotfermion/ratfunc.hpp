#pragma once

#include <utility>
#include <vector>

#include "laurent.hpp"

namespace knotfermion {

namespace poly {

using Vec = std::vector<Rational>;  // dense polynomial, index = exponent

inline void trim(Vec& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// Quotient and remainder of polynomial division over Q.
inline std::pair<Vec, Vec> divmod(Vec a, const Vec& b) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  trim(a);
  Vec q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
  Rational inv = b.back().inverse();
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t sh = a.size() - b.size();
    Rational f = a.back() * inv;
    q[sh] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[sh + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return {q, a};
}

inline Vec monic(Vec p) {
  trim(p);
  if (p.empty()) return p;
  Rational inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

inline Vec gcd(Vec a, Vec b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = monic(std::move(r));
  }
  return monic(std::move(a));
}

}  // namespace poly

/// Quotient of two Laurent polynomials over Q in canonical form:
/// the denominator is a monic polynomial with nonzero constant term and shares no factor with the numerator.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(const LaurentPoly& p) : num_(p), den_(1) {}
  RationalFunction(const Rational& c) : num_(c), den_(1) {}
  RationalFunction(int c) : num_(Rational(c)), den_(1) {}
  RationalFunction(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
    if (den.zero()) throw DivisionByZero("rational function with zero denominator");
    canonicalize();
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.zero(); }
  bool is_laurent() const { return den_ == LaurentPoly(1); }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DivisionByZero("rational function division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }
  RationalFunction inverse() const { return RationalFunction(1) / *this; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Value at a rational point; throws SampleAtPole at a zero of the denominator.
  Rational evaluate_at(const Rational& x) const {
    Rational d = evaluate(den_, x);
    if (d.is_zero()) throw SampleAtPole("denominator vanishes at " + x.str());
    return evaluate(num_, x) / d;
  }

 private:
  static poly::Vec to_vec(const LaurentPoly& p) {
    poly::Vec v(p.coeffs().begin(), p.coeffs().end());
    return v;
  }
  void canonicalize() {
    if (num_.zero()) {
      den_ = LaurentPoly(1);
      return;
    }
    int shift = num_.lo() - den_.lo();
    poly::Vec n = to_vec(num_), d = to_vec(den_);
    poly::Vec g = poly::gcd(n, d);
    if (g.size() > 1) {
      n = poly::divmod(n, g).first;
      d = poly::divmod(d, g).first;
    }
    Rational lead = d.back();
    Rational inv = lead.inverse();
    for (auto& c : n) c *= inv;
    for (auto& c : d) c *= inv;
    num_ = LaurentPoly::dense(shift, n);
    den_ = LaurentPoly::dense(0, d);
  }

  LaurentPoly num_;
  LaurentPoly den_;
};

inline bool is_zero(const RationalFunction& r) { return r.is_zero(); }

/// Field element of Frac(R) kept as an unreduced pair; equality is tested by cross-multiplication.
/// Used where the ring is multivariate and no gcd is available.
template <class R>
class Fraction {
 public:
  Fraction() : num_(0), den_(1) {}
  Fraction(const R& n) : num_(n), den_(1) {}
  Fraction(int c) : num_(c), den_(1) {}
  Fraction(const R& n, const R& d) : num_(n), den_(d) {
    if (is_zero(d)) throw DivisionByZero("fraction with zero denominator");
  }
  const R& num() const { return num_; }
  const R& den() const { return den_; }
  bool is_zero_value() const { return is_zero(num_); }

  Fraction operator-() const { return Fraction(-num_, den_); }
  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    if (a.den_ == b.den_) return Fraction(a.num_ + b.num_, a.den_);
    return Fraction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }
  friend Fraction operator*(const Fraction& a, const Fraction& b) { return Fraction(a.num_ * b.num_, a.den_ * b.den_); }
  friend Fraction operator/(const Fraction& a, const Fraction& b) {
    if (is_zero(b.num_)) throw DivisionByZero("fraction division by zero");
    return Fraction(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num_ * b.den_ == b.num_ * a.den_; }

 private:
  R num_;
  R den_;
};

template <class R>
bool is_zero(const Fraction<R>& f) {
  return f.is_zero_value();
}

}  // namespace knotfermion
