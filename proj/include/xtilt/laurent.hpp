#pragma once

#include <map>
#include <string>

#include "xtilt/poly.hpp"

namespace xtilt {

/// Laurent polynomial in v with rational coefficients; zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(Rational c);
  static LaurentPoly monomial(Rational c, int exponent);
  /// Interprets p as a Laurent polynomial multiplied by v^shift.
  static LaurentPoly from_poly(const Poly& p, int shift = 0);

  bool is_zero() const { return c_.empty(); }
  const std::map<int, Rational>& coeffs() const { return c_; }
  Rational coeff(int e) const;
  int min_exponent() const { return c_.empty() ? 0 : c_.begin()->first; }
  int max_exponent() const { return c_.empty() ? 0 : c_.rbegin()->first; }

  /// Returns (p, s) with this = v^s * p and p(0) != 0 (p = 0, s = 0 for zero).
  std::pair<Poly, int> to_poly() const;
  Rational eval_at_one() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  /// Exact quotient; throws std::logic_error when b does not divide this.
  LaurentPoly exact_div(const LaurentPoly& b) const;

  /// e.g. "v^2+1+v^-2".
  std::string to_string() const;

 private:
  std::map<int, Rational> c_;
};

/// Quantum integer [n]_d.
LaurentPoly qint(long n, int d);
/// Quantum factorial [n]_d^! for n >= 0.
LaurentPoly qfactorial(long n, int d);
/// Quantum binomial [n choose r]_d for any integer n and r >= 0.
LaurentPoly qbinom(long n, long r, int d);

}  // namespace xtilt
