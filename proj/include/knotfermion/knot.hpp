#pragma once

#include <string>

#include "laurent.hpp"
#include "rational.hpp"

namespace knotfermion {

/// Torus knot T[Q,P] data. Powers A^x are stored as integer powers of Ahat = A^{1/Q}.
struct KnotParams {
  int Q = 1;
  int P = 1;
  int gamma = 0;
  Rational b = 1;

  KnotParams() = default;
  KnotParams(int q, int p) : Q(q), P(p), b(Rational(p, q)) {
    if (q < 1 || p < 1) throw InvalidArgument("Q and P must be positive");
    if (gcd_long(q, p) != 1) throw InvalidArgument("gcd(P, Q) must be 1");
    gamma = 0;
    while ((static_cast<long>(P) * gamma + 1) % Q != 0) ++gamma;
  }

  /// A^k as a Laurent monomial in Ahat.
  LaurentPoly A(int k) const { return LaurentPoly::monomial(1, Q * k); }
  /// A^{b k} = Ahat^{P k}.
  LaurentPoly Ab(int k) const { return LaurentPoly::monomial(1, P * k); }
  /// A^{(b + s) k} for integer s.
  LaurentPoly Abs(int s, int k) const { return LaurentPoly::monomial(1, (P + s * Q) * k); }
  /// a = A^2.
  LaurentPoly a() const { return A(2); }
  /// Substitutes a = A^2 into a polynomial in a.
  LaurentPoly a_to_Ahat(const LaurentPoly& p) const { return p.subs_power(2 * Q); }

  std::string str() const { return "(" + std::to_string(Q) + "," + std::to_string(P) + ")"; }
  friend bool operator==(const KnotParams& x, const KnotParams& y) { return x.Q == y.Q && x.P == y.P; }
};

}  // namespace knotfermion
