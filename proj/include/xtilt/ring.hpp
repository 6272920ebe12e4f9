#pragma once

#include <climits>
#include <string>

#include "xtilt/laurent.hpp"
#include "xtilt/poly.hpp"

namespace xtilt {

enum class RingKind {
  Generic,       // Q(v)
  Rational,      // Q with q = 1
  Cyclotomic,    // Q[v] localized at sigma_l, q = v
  IntegerLocal,  // Z localized at p, q = 1
};

/// One of the supported ground rings: a field or a discrete valuation ring.
class GroundRing {
 public:
  GroundRing() = default;
  static GroundRing generic() { return GroundRing(RingKind::Generic, 0); }
  static GroundRing rational() { return GroundRing(RingKind::Rational, 0); }
  static GroundRing cyclotomic(int l);
  static GroundRing integer_local(int p);
  /// "generic", "rational", "cyc:<l>" or "int:<p>"; throws std::invalid_argument.
  static GroundRing parse(const std::string& descriptor);

  std::string descriptor() const;
  RingKind kind() const { return kind_; }
  int param() const { return param_; }
  bool is_field() const { return kind_ == RingKind::Generic || kind_ == RingKind::Rational; }
  bool is_dvr() const { return !is_field(); }
  /// True when q is the image of v, false when q = 1.
  bool q_is_v() const { return kind_ == RingKind::Generic || kind_ == RingKind::Cyclotomic; }
  /// sigma_l for cyclotomic rings.
  const Poly& sigma() const;
  /// Fraction field (Q(v) or Q); a field is its own fraction field.
  GroundRing fraction_field() const;

  /// Throws std::domain_error unless the image of [n]_d is nonzero for
  /// 0 < |n| <= bound and d in {1,2,3}.
  void check_generic(int bound = 64) const;

  friend bool operator==(const GroundRing& a, const GroundRing& b) {
    return a.kind_ == b.kind_ && a.param_ == b.param_;
  }
  friend bool operator!=(const GroundRing& a, const GroundRing& b) { return !(a == b); }

 private:
  GroundRing(RingKind k, int p) : kind_(k), param_(p) {}
  RingKind kind_ = RingKind::Generic;
  int param_ = 0;
};

class ResidueElem;

inline constexpr int kInfiniteValuation = INT_MAX;

/// Element of the fraction field of a ground ring, in canonical form
/// pi^k * v^e * num/den with num, den coprime, not divisible by v or pi,
/// den monic (or den = 1 when q = 1). Elements of the ring itself have k >= 0.
class RingElem {
 public:
  RingElem() = default;
  static RingElem zero(const GroundRing& r);
  static RingElem one(const GroundRing& r);
  static RingElem from_int(const GroundRing& r, long c);
  static RingElem from_rational(const GroundRing& r, const Rational& c);
  /// The uniformizer (sigma_l or p); throws for fields.
  static RingElem uniformizer(const GroundRing& r);
  /// Image of v^e * num/den; num/den need not be reduced.
  static RingElem from_fraction(const GroundRing& r, const Poly& num, const Poly& den, int e = 0);
  /// Structural map Z[v,v^-1] (with rational coefficients) -> ring.
  static RingElem embed(const LaurentPoly& p, const GroundRing& r);
  /// Inverse of to_string; throws std::invalid_argument on malformed input.
  static RingElem parse(const std::string& text, const GroundRing& r);

  const GroundRing& ring() const { return ring_; }
  bool is_zero() const { return zero_; }
  bool is_one() const;
  /// kInfiniteValuation for zero; always 0 for nonzero field elements.
  int valuation() const { return zero_ ? kInfiniteValuation : k_; }
  bool in_ring() const { return zero_ || k_ >= 0; }
  bool is_unit() const { return !zero_ && k_ == 0; }
  int k() const { return k_; }
  int v_shift() const { return e_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  RingElem operator-() const;
  RingElem& operator+=(const RingElem& o);
  RingElem& operator-=(const RingElem& o);
  RingElem& operator*=(const RingElem& o);
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  /// Division in the fraction field.
  friend RingElem operator/(const RingElem& a, const RingElem& b) { return a * b.inverse(); }
  friend bool operator==(const RingElem& a, const RingElem& b);
  friend bool operator!=(const RingElem& a, const RingElem& b) { return !(a == b); }

  /// Inverse in the fraction field; throws std::domain_error for zero.
  RingElem inverse() const;
  /// Unit part (this divided by pi^k).
  RingElem unit_part() const;
  /// Reduction modulo the maximal ideal; requires a DVR and in_ring().
  ResidueElem residue() const;
  /// "s^1 * (v^-2*(v^2-v+1))", "5^1 * 1", "0", ...
  std::string to_string() const;

 private:
  static RingElem normalize(const GroundRing& r, int k, int e, Poly num, Poly den);
  GroundRing ring_;
  bool zero_ = true;
  int k_ = 0;
  int e_ = 0;
  Poly num_;
  Poly den_;
};

/// Element of the residue field: F_p as a constant in [0, p), or Q(zeta_l)
/// as a polynomial of degree < deg sigma_l.
class ResidueElem {
 public:
  ResidueElem() = default;
  ResidueElem(const GroundRing& r, Poly value);
  static ResidueElem zero(const GroundRing& r) { return ResidueElem(r, Poly()); }
  static ResidueElem one(const GroundRing& r) { return ResidueElem(r, Poly::constant(1)); }

  const GroundRing& ring() const { return ring_; }
  const Poly& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }

  ResidueElem operator-() const;
  friend ResidueElem operator+(const ResidueElem& a, const ResidueElem& b);
  friend ResidueElem operator-(const ResidueElem& a, const ResidueElem& b);
  friend ResidueElem operator*(const ResidueElem& a, const ResidueElem& b);
  friend bool operator==(const ResidueElem& a, const ResidueElem& b) {
    return a.ring_ == b.ring_ && a.value_ == b.value_;
  }
  friend bool operator!=(const ResidueElem& a, const ResidueElem& b) { return !(a == b); }
  /// Throws std::domain_error for zero.
  ResidueElem inverse() const;
  /// A representative in the ring (a unit unless zero).
  RingElem lift() const;
  std::string to_string() const;

 private:
  GroundRing ring_;
  Poly value_;
};

/// Image of [n]_d in the ring, memoized.
const RingElem& qint_elem(long n, int d, const GroundRing& r);
/// Image of the quantum binomial in the ring, memoized.
const RingElem& qbinom_elem(long n, long k, int d, const GroundRing& r);

/// Exponent of p in the nonzero integer z, with z divided out.
int extract_prime(Integer& z, long p);
bool is_prime(long p);

}  // namespace xtilt
