#pragma once

#include <gmpxx.h>

#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace xtilt {

using Rational = mpq_class;
using Integer = mpz_class;

/// Dense univariate polynomial in `v` with rational coefficients.
/// Coefficient i multiplies v^i; trailing zeros are never stored.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Rational c);
  explicit Poly(std::vector<Rational> coeffs);

  static Poly constant(long c) { return Poly(Rational(c)); }
  static Poly monomial(Rational c, int degree);
  static Poly v() { return monomial(Rational(1), 1); }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& lead() const { return c_.back(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  /// Index of the lowest nonzero coefficient (0 for the zero polynomial).
  int low_degree() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  /// Euclidean division; throws std::domain_error when dividing by zero.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  /// True when `d` divides this polynomial in Q[v].
  bool divisible_by(const Poly& d) const;
  /// Drops the factor v^k from the bottom; requires low_degree() >= k.
  Poly shift_down(int k) const;
  Poly shift_up(int k) const;
  Poly monic() const;
  Rational eval(const Rational& x) const;

  /// Monic gcd; gcd(0,0) = 0.
  static Poly gcd(Poly a, Poly b);
  /// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
  static std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b);

  /// Human readable, e.g. "v^2-1/2*v+3".
  std::string to_string(const char* var = "v") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// The l-th cyclotomic polynomial, memoized.
const Poly& cyclotomic_polynomial(int l);

}  // namespace xtilt
