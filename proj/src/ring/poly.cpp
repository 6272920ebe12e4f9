#include "xtilt/poly.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace xtilt {

Poly::Poly(Rational c) {
  if (c != 0) c_.push_back(std::move(c));
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(Rational c, int degree) {
  Poly p;
  if (c == 0) return p;
  p.c_.assign(degree + 1, Rational(0));
  p.c_[degree] = std::move(c);
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
  return c_[i];
}

int Poly::low_degree() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return 0;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly rem = *this;
  if (rem.degree() < d.degree()) return {Poly(), rem};
  std::vector<Rational> q(rem.degree() - d.degree() + 1, Rational(0));
  const Rational inv_lead = 1 / d.lead();
  while (!rem.is_zero() && rem.degree() >= d.degree()) {
    const int shift = rem.degree() - d.degree();
    Rational f = rem.lead() * inv_lead;
    for (int i = 0; i <= d.degree(); ++i) rem.c_[i + shift] -= f * d.c_[i];
    q[shift] = f;
    rem.trim();
  }
  return {Poly(std::move(q)), rem};
}

bool Poly::divisible_by(const Poly& d) const { return divmod(d).second.is_zero(); }

Poly Poly::shift_down(int k) const {
  if (k == 0 || is_zero()) return *this;
  if (k < 0) return shift_up(-k);
  Poly r;
  r.c_.assign(c_.begin() + k, c_.end());
  return r;
}

Poly Poly::shift_up(int k) const {
  if (k == 0 || is_zero()) return *this;
  if (k < 0) return shift_down(-k);
  Poly r;
  r.c_.assign(k, Rational(0));
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::monic() const {
  if (is_zero() || lead() == 1) return *this;
  return *this * Rational(1 / lead());
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

namespace {

using ZPoly = std::vector<Integer>;

// Primitive integer polynomial with positive leading coefficient, proportional to p.
ZPoly primitive_part(const std::vector<Rational>& c) {
  Integer l = 1;
  for (const auto& x : c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  ZPoly z(c.size());
  Integer g = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    z[i] = c[i].get_num() * (l / c[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  if (c.back() < 0) g = -g;
  if (g != 1)
    for (auto& x : z) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return z;
}

void make_primitive(ZPoly& z) {
  Integer g = 0;
  for (const auto& x : z) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  if (z.back() < 0) g = -g;
  if (g != 1 && g != 0)
    for (auto& x : z) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

void trim_z(ZPoly& z) {
  while (!z.empty() && z.back() == 0) z.pop_back();
}

using u64 = unsigned long;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Degree of gcd(a, b) over F_p; -2 when p divides a leading coefficient.
int gcd_degree_mod(const ZPoly& a, const ZPoly& b, u64 p) {
  auto reduce = [p](const ZPoly& z) {
    std::vector<u64> r(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) r[i] = mpz_fdiv_ui(z[i].get_mpz_t(), p);
    return r;
  };
  std::vector<u64> x = reduce(a), y = reduce(b);
  if (x.back() == 0 || y.back() == 0) return -2;
  auto trim = [](std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  while (!y.empty()) {
    const u64 inv = powmod(y.back(), p - 2, p);
    while (x.size() >= y.size()) {
      const u64 f = mulmod(x.back(), inv, p);
      const std::size_t shift = x.size() - y.size();
      for (std::size_t i = 0; i < y.size(); ++i) x[i + shift] = (x[i + shift] + p - mulmod(f, y[i], p)) % p;
      trim(x);
      if (x.empty()) break;
    }
    std::swap(x, y);
  }
  return static_cast<int>(x.size()) - 1;
}

}  // namespace

Poly Poly::gcd(Poly a, Poly b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly::constant(1);
  ZPoly x = primitive_part(a.c_), y = primitive_part(b.c_);
  for (u64 p : {2305843009213693951UL, 1000000007UL, 998244353UL}) {
    const int d = gcd_degree_mod(x, y, p);
    if (d == 0) return Poly::constant(1);
    if (d >= 0) break;
  }
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    // sparse pseudo-remainder of x by y, kept primitive
    const Integer ly = y.back();
    while (x.size() >= y.size()) {
      const Integer lx = x.back();
      const std::size_t shift = x.size() - y.size();
      for (auto& c : x) c *= ly;
      for (std::size_t i = 0; i < y.size(); ++i) x[i + shift] -= lx * y[i];
      trim_z(x);
      if (x.empty()) break;
    }
    if (!x.empty()) make_primitive(x);
    std::swap(x, y);
    if (y.size() == 1) return Poly::constant(1);
  }
  std::vector<Rational> c(x.begin(), x.end());
  return Poly(std::move(c)).monic();
}

std::tuple<Poly, Poly, Poly> Poly::xgcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(1), s1;
  Poly t0, t1 = Poly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Rational inv = 1 / r0.lead();
  return {r0 * inv, s0 * inv, t0 * inv};
}

namespace {

void append_rational(std::ostringstream& os, const Rational& q) {
  os << q.get_num();
  if (q.get_den() != 1) os << '/' << q.get_den();
}

}  // namespace

std::string Poly::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (c < 0)
      os << '-';
    else if (!first)
      os << '+';
    first = false;
    if (i == 0) {
      append_rational(os, mag);
      continue;
    }
    if (mag != 1) {
      append_rational(os, mag);
      os << '*';
    }
    os << var;
    if (i != 1) os << '^' << i;
  }
  return os.str();
}

const Poly& cyclotomic_polynomial(int l) {
  if (l < 1) throw std::invalid_argument("cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<int, Poly> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(l); it != cache.end()) return it->second;
  // v^d - 1 = prod_{e | d} sigma_e, filled in for every divisor d of l
  for (int d = 1; d <= l; ++d) {
    if (l % d != 0 || cache.count(d)) continue;
    Poly p = Poly::monomial(Rational(1), d) - Poly::constant(1);
    for (int e = 1; e < d; ++e)
      if (d % e == 0) p = p.divmod(cache.at(e)).first;
    cache.emplace(d, std::move(p));
  }
  return cache.at(l);
}

}  // namespace xtilt
