#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>

#include "errors.hpp"

namespace knotfermion {

/// Exact rational number, always kept in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : v_(v) {}
  Rational(long v) : v_(v) {}
  Rational(long long v) : v_(static_cast<long>(v)) {}
  Rational(const mpz_class& n) : v_(n) {}
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  Rational(long long num, long long den) : Rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))) {}
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  /// Parses "p/q" or "p".
  static Rational parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(mpz_class(s));
    return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
  }

  const mpq_class& raw() const { return v_; }
  mpz_class num() const { return v_.get_num(); }
  mpz_class den() const { return v_.get_den(); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rational inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    Rational r;
    mpq_inv(r.v_.get_mpq_t(), v_.get_mpq_t());
    return r;
  }

  Rational operator-() const {
    Rational r;
    mpq_neg(r.v_.get_mpq_t(), v_.get_mpq_t());
    return r;
  }
  Rational& operator+=(const Rational& o) {
    mpq_add(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero("rational division by zero");
    mpq_div(v_.get_mpq_t(), v_.get_mpq_t(), o.v_.get_mpq_t());
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  /// Adds a*b in place.
  void addmul(const Rational& a, const Rational& b) {
    mpq_class t;
    mpq_mul(t.get_mpq_t(), a.v_.get_mpq_t(), b.v_.get_mpq_t());
    mpq_add(v_.get_mpq_t(), v_.get_mpq_t(), t.get_mpq_t());
  }

  friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Rational r;
    mpz_pow_ui(r.v_.get_num_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(r.v_.get_den_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return r;
  }

  /// Canonical text form "p/q" (denominator always written).
  std::string str() const { return v_.get_num().get_str() + "/" + v_.get_den().get_str(); }
  /// Short text form, omitting a unit denominator.
  std::string short_str() const { return is_integer() ? v_.get_num().get_str() : str(); }

  long to_long() const {
    if (!is_integer() || !v_.get_num().fits_slong_p()) throw InvalidArgument("rational is not a machine integer: " + str());
    return v_.get_num().get_si();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.short_str(); }

 private:
  mpq_class v_;
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }

/// n! as a rational.
inline Rational factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

/// Generalized binomial coefficient binom(e, k) for rational e.
inline Rational binomial(const Rational& e, long k) {
  if (k < 0) return 0;
  Rational r = 1;
  for (long j = 0; j < k; ++j) r *= (e - Rational(j));
  return r / factorial(k);
}

/// Rising factorial (x)_n = x(x+1)...(x+n-1), generic in the ring.
template <class R>
R rising(const R& x, long n) {
  R r(1);
  for (long j = 0; j < n; ++j) r = r * (x + R(j));
  return r;
}

inline long gcd_long(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace knotfermion
