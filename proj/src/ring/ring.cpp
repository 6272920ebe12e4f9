#include "xtilt/ring.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace xtilt {

// ---------------------------------------------------------------- GroundRing

GroundRing GroundRing::cyclotomic(int l) {
  if (l < 1) throw std::invalid_argument("cyclotomic ring needs l >= 1");
  return GroundRing(RingKind::Cyclotomic, l);
}

GroundRing GroundRing::integer_local(int p) {
  if (!is_prime(p)) throw std::invalid_argument("int:<p> needs a prime p, got " + std::to_string(p));
  return GroundRing(RingKind::IntegerLocal, p);
}

GroundRing GroundRing::parse(const std::string& d) {
  auto number_after = [&](std::size_t pos) {
    const std::string tail = d.substr(pos);
    if (tail.empty() || tail.size() > 9) throw std::invalid_argument("bad ring descriptor: " + d);
    for (char c : tail)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad ring descriptor: " + d);
    return std::stoi(tail);
  };
  if (d == "generic") return generic();
  if (d == "rational") return rational();
  if (d.rfind("cyc:", 0) == 0) return cyclotomic(number_after(4));
  if (d.rfind("int:", 0) == 0) return integer_local(number_after(4));
  throw std::invalid_argument("unknown ring descriptor: " + d);
}

std::string GroundRing::descriptor() const {
  switch (kind_) {
    case RingKind::Generic:
      return "generic";
    case RingKind::Rational:
      return "rational";
    case RingKind::Cyclotomic:
      return "cyc:" + std::to_string(param_);
    case RingKind::IntegerLocal:
      return "int:" + std::to_string(param_);
  }
  return "?";
}

const Poly& GroundRing::sigma() const {
  if (kind_ != RingKind::Cyclotomic) throw std::logic_error("sigma() on a non-cyclotomic ring");
  return cyclotomic_polynomial(param_);
}

GroundRing GroundRing::fraction_field() const {
  return q_is_v() ? generic() : rational();
}

void GroundRing::check_generic(int bound) const {
  for (int d = 1; d <= 3; ++d)
    for (long n = 1; n <= bound; ++n)
      if (qint_elem(n, d, *this).is_zero() || qint_elem(-n, d, *this).is_zero())
        throw std::domain_error("ring " + descriptor() + " is not generic: [" + std::to_string(n) +
                                "]_" + std::to_string(d) + " vanishes");
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long i = 2; i * i <= p; ++i)
    if (p % i == 0) return false;
  return true;
}

int extract_prime(Integer& z, long p) {
  int k = 0;
  if (z == 0) return 0;
  Integer pp(p);
  while (mpz_divisible_p(z.get_mpz_t(), pp.get_mpz_t())) {
    mpz_divexact(z.get_mpz_t(), z.get_mpz_t(), pp.get_mpz_t());
    ++k;
  }
  return k;
}

// ------------------------------------------------------------------ RingElem

namespace {

void require_same(const RingElem& a, const RingElem& b) {
  if (a.ring() != b.ring())
    throw std::invalid_argument("ring mismatch: " + a.ring().descriptor() + " vs " + b.ring().descriptor());
}

Poly pow_poly(const Poly& p, int k) {
  Poly r = Poly::constant(1);
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

}  // namespace

RingElem RingElem::normalize(const GroundRing& r, int k, int e, Poly num, Poly den) {
  RingElem x;
  x.ring_ = r;
  if (num.is_zero()) return x;
  if (den.is_zero()) throw std::domain_error("zero denominator");
  if (!r.q_is_v()) {
    const Rational dq = den.eval(Rational(1));
    if (dq == 0) throw std::domain_error("denominator vanishes at q = 1");
    Rational q = num.eval(Rational(1)) / dq;
    if (q == 0) return x;
    if (r.kind() == RingKind::IntegerLocal) {
      Integer a = q.get_num(), b = q.get_den();
      k += extract_prime(a, r.param());
      k -= extract_prime(b, r.param());
      q = Rational(a, b);
      q.canonicalize();
    }
    x.zero_ = false;
    x.k_ = r.is_field() ? 0 : k;
    x.e_ = 0;
    x.num_ = Poly(q);
    x.den_ = Poly::constant(1);
    return x;
  }
  Poly g = Poly::gcd(num, den);
  if (!g.is_one()) {
    num = num.divmod(g).first;
    den = den.divmod(g).first;
  }
  const int ln = num.low_degree();
  const int ld = den.low_degree();
  num = num.shift_down(ln);
  den = den.shift_down(ld);
  e += ln - ld;
  if (r.kind() == RingKind::Cyclotomic) {
    const Poly& s = r.sigma();
    for (;;) {
      auto [q, rem] = num.divmod(s);
      if (!rem.is_zero()) break;
      num = std::move(q);
      ++k;
    }
    for (;;) {
      auto [q, rem] = den.divmod(s);
      if (!rem.is_zero()) break;
      den = std::move(q);
      --k;
    }
  } else {
    k = 0;
  }
  if (den.lead() != 1) {
    Rational c = 1 / den.lead();
    den *= c;
    num *= c;
  }
  x.zero_ = false;
  x.k_ = k;
  x.e_ = e;
  x.num_ = std::move(num);
  x.den_ = std::move(den);
  return x;
}

RingElem RingElem::zero(const GroundRing& r) {
  RingElem x;
  x.ring_ = r;
  return x;
}

RingElem RingElem::one(const GroundRing& r) { return from_int(r, 1); }

RingElem RingElem::from_int(const GroundRing& r, long c) { return from_rational(r, Rational(c)); }

RingElem RingElem::from_rational(const GroundRing& r, const Rational& c) {
  return normalize(r, 0, 0, Poly(c), Poly::constant(1));
}

RingElem RingElem::uniformizer(const GroundRing& r) {
  switch (r.kind()) {
    case RingKind::Cyclotomic:
      return normalize(r, 0, 0, r.sigma(), Poly::constant(1));
    case RingKind::IntegerLocal:
      return from_int(r, r.param());
    default:
      throw std::logic_error("fields have no uniformizer");
  }
}

RingElem RingElem::from_fraction(const GroundRing& r, const Poly& num, const Poly& den, int e) {
  if (!r.q_is_v()) return normalize(r, 0, 0, num, den);
  return normalize(r, 0, e, num, den);
}

RingElem RingElem::embed(const LaurentPoly& p, const GroundRing& r) {
  if (!r.q_is_v()) return from_rational(r, p.eval_at_one());
  auto [poly, shift] = p.to_poly();
  return normalize(r, 0, shift, std::move(poly), Poly::constant(1));
}

bool RingElem::is_one() const {
  return !zero_ && k_ == 0 && e_ == 0 && num_.is_one() && den_.is_one();
}

RingElem RingElem::operator-() const {
  RingElem x = *this;
  x.num_ = -x.num_;
  return x;
}

RingElem& RingElem::operator+=(const RingElem& o) {
  if (o.zero_) return *this;
  if (zero_) return *this = o;
  require_same(*this, o);
  if (!ring_.q_is_v()) {
    Rational a = num_.coeff(0), b = o.num_.coeff(0);
    Rational p(ring_.kind() == RingKind::IntegerLocal ? ring_.param() : 1);
    const int k = std::min(k_, o.k_);
    // a*p^(k_-k) + b*p^(o.k_-k), times p^k
    auto scaled = [&](Rational c, int ex) {
      for (int i = 0; i < ex; ++i) c *= p;
      return c;
    };
    Rational s = scaled(a, k_ - k) + scaled(b, o.k_ - k);
    *this = normalize(ring_, k, 0, Poly(s), Poly::constant(1));
    return *this;
  }
  const int k = std::min(k_, o.k_);
  const int e = std::min(e_, o.e_);
  Poly t1, t2, den;
  if (den_ == o.den_) {
    t1 = num_.shift_up(e_ - e);
    t2 = o.num_.shift_up(o.e_ - e);
    den = den_;
  } else {
    const Poly g = Poly::gcd(den_, o.den_);
    const Poly a = g.is_one() ? den_ : den_.divmod(g).first;
    const Poly b = g.is_one() ? o.den_ : o.den_.divmod(g).first;
    t1 = (num_ * b).shift_up(e_ - e);
    t2 = (o.num_ * a).shift_up(o.e_ - e);
    den = den_ * b;
  }
  if (ring_.kind() == RingKind::Cyclotomic) {
    const Poly& s = ring_.sigma();
    if (k_ > k) t1 = t1 * pow_poly(s, k_ - k);
    if (o.k_ > k) t2 = t2 * pow_poly(s, o.k_ - k);
  }
  *this = normalize(ring_, k, e, t1 + t2, std::move(den));
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) { return *this += -o; }

RingElem operator*(const RingElem& a, const RingElem& b) {
  if (a.zero_) return a.ring_ == b.ring_ ? a : RingElem::zero(b.ring_);
  if (b.zero_) return b;
  require_same(a, b);
  if (!a.ring_.q_is_v()) {
    RingElem x = a;
    x.k_ = a.k_ + b.k_;
    x.num_ = Poly(a.num_.coeff(0) * b.num_.coeff(0));
    return x;
  }
  // Both factors are reduced, so only cross cancellations can occur.
  Poly g1 = Poly::gcd(a.num_, b.den_);
  Poly g2 = Poly::gcd(b.num_, a.den_);
  Poly n1 = g1.is_one() ? a.num_ : a.num_.divmod(g1).first;
  Poly d2 = g1.is_one() ? b.den_ : b.den_.divmod(g1).first;
  Poly n2 = g2.is_one() ? b.num_ : b.num_.divmod(g2).first;
  Poly d1 = g2.is_one() ? a.den_ : a.den_.divmod(g2).first;
  RingElem x;
  x.ring_ = a.ring_;
  x.zero_ = false;
  x.k_ = a.k_ + b.k_;
  x.e_ = a.e_ + b.e_;
  x.num_ = n1 * n2;
  x.den_ = d1 * d2;
  if (x.den_.lead() != 1) {
    Rational c = 1 / x.den_.lead();
    x.den_ *= c;
    x.num_ *= c;
  }
  return x;
}

RingElem& RingElem::operator*=(const RingElem& o) { return *this = *this * o; }

bool operator==(const RingElem& a, const RingElem& b) {
  if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
  return a.ring_ == b.ring_ && a.k_ == b.k_ && a.e_ == b.e_ && a.num_ == b.num_ && a.den_ == b.den_;
}

RingElem RingElem::inverse() const {
  if (zero_) throw std::domain_error("inverse of zero");
  if (!ring_.q_is_v()) {
    RingElem x = *this;
    x.k_ = -k_;
    x.num_ = Poly(1 / num_.coeff(0));
    return x;
  }
  RingElem x;
  x.ring_ = ring_;
  x.zero_ = false;
  x.k_ = -k_;
  x.e_ = -e_;
  x.num_ = den_;
  x.den_ = num_;
  Rational c = 1 / x.den_.lead();
  x.den_ *= c;
  x.num_ *= c;
  return x;
}

RingElem RingElem::unit_part() const {
  RingElem x = *this;
  x.k_ = 0;
  return x;
}

namespace {

Poly poly_inverse_mod(const Poly& f, const Poly& m) {
  auto [g, s, t] = Poly::xgcd(f, m);
  if (!g.is_one()) throw std::domain_error("not invertible modulo sigma");
  return s.divmod(m).second;
}

Rational mod_prime(const Rational& q, long p) {
  Integer pz(p);
  Integer a = q.get_num() % pz;
  Integer b = q.get_den() % pz;
  if (b < 0) b += pz;
  Integer binv;
  if (mpz_invert(binv.get_mpz_t(), b.get_mpz_t(), pz.get_mpz_t()) == 0)
    throw std::domain_error("denominator divisible by p");
  Integer r = (a * binv) % pz;
  if (r < 0) r += pz;
  return Rational(r);
}

Poly reduce_residue(const GroundRing& r, const Poly& p) {
  if (r.kind() == RingKind::IntegerLocal) return Poly(mod_prime(p.coeff(0), r.param()));
  if (r.kind() == RingKind::Cyclotomic) return p.divmod(r.sigma()).second;
  throw std::logic_error("residue field requested for a field");
}

}  // namespace

ResidueElem RingElem::residue() const {
  if (!ring_.is_dvr()) throw std::logic_error("residue() needs a DVR");
  if (!in_ring()) throw std::domain_error("residue() of an element outside the ring");
  if (zero_ || k_ > 0) return ResidueElem::zero(ring_);
  if (ring_.kind() == RingKind::IntegerLocal) return ResidueElem(ring_, num_);
  const Poly& s = ring_.sigma();
  Poly val = num_.divmod(s).second * poly_inverse_mod(den_.divmod(s).second, s);
  Poly vpow = e_ >= 0 ? Poly::v() : poly_inverse_mod(Poly::v(), s);
  for (int i = 0; i < std::abs(e_); ++i) val = (val * vpow).divmod(s).second;
  return ResidueElem(ring_, val.divmod(s).second);
}

namespace {

std::string unit_string(const RingElem& x) {
  const Poly& num = x.num();
  const Poly& den = x.den();
  const int e = x.v_shift();
  if (e == 0 && den.is_one()) return num.to_string();
  std::string s;
  if (e != 0) s += "v^" + std::to_string(e) + "*";
  s += "(" + num.to_string() + ")";
  if (!den.is_one()) s += "/(" + den.to_string() + ")";
  return s;
}

std::string rational_string(const Rational& q) {
  std::string s = q.get_num().get_str();
  if (q.get_den() != 1) s += "/" + q.get_den().get_str();
  return s;
}

}  // namespace

std::string RingElem::to_string() const {
  if (zero_) return "0";
  switch (ring_.kind()) {
    case RingKind::Generic:
      return unit_string(*this);
    case RingKind::Rational:
      return rational_string(num_.coeff(0));
    case RingKind::Cyclotomic:
      return "s^" + std::to_string(k_) + " * (" + unit_string(*this) + ")";
    case RingKind::IntegerLocal:
      return std::to_string(ring_.param()) + "^" + std::to_string(k_) + " * " +
             rational_string(num_.coeff(0));
  }
  return "?";
}

// ------------------------------------------------------------------- parsing

namespace {

struct Frac {
  Poly num = Poly::constant(0);
  Poly den = Poly::constant(1);
};

Frac frac_mul(const Frac& a, const Frac& b) { return {a.num * b.num, a.den * b.den}; }

Frac frac_inv(const Frac& a) {
  if (a.num.is_zero()) throw std::invalid_argument("division by zero in ring element");
  return {a.den, a.num};
}

class ElemParser {
 public:
  ElemParser(const std::string& text, const GroundRing& r) : s_(text), r_(r) {}

  Frac parse() {
    Frac f = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse ring element '" + s_ + "': " + why);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Frac expr() {
    Frac acc = term();
    for (;;) {
      if (accept('+')) {
        Frac t = term();
        acc = {acc.num * t.den + t.num * acc.den, acc.den * t.den};
      } else if (accept('-')) {
        Frac t = term();
        acc = {acc.num * t.den - t.num * acc.den, acc.den * t.den};
      } else {
        return acc;
      }
    }
  }

  Frac term() {
    Frac acc = unary();
    for (;;) {
      if (accept('*'))
        acc = frac_mul(acc, unary());
      else if (accept('/'))
        acc = frac_mul(acc, frac_inv(unary()));
      else
        return acc;
    }
  }

  Frac unary() {
    if (accept('-')) {
      Frac f = unary();
      return {-f.num, f.den};
    }
    return power();
  }

  Frac power() {
    Frac base = atom();
    if (!accept('^')) return base;
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    const std::string digits = read_digits();
    if (digits.empty() || digits.size() > 6) fail("bad exponent");
    const int n = std::stoi(digits);
    Frac r;
    r.num = Poly::constant(1);
    for (int i = 0; i < n; ++i) r = frac_mul(r, base);
    return neg ? frac_inv(r) : r;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  Frac atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Frac f = expr();
      if (!accept(')')) fail("missing ')'");
      return f;
    }
    if (c == 'v') {
      ++pos_;
      if (!r_.q_is_v()) fail("'v' is not allowed when q = 1");
      return {Poly::v(), Poly::constant(1)};
    }
    if (c == 's') {
      ++pos_;
      if (r_.kind() != RingKind::Cyclotomic) fail("'s' only names the cyclotomic uniformizer");
      return {r_.sigma(), Poly::constant(1)};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer z(read_digits());
      return {Poly(Rational(z)), Poly::constant(1)};
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string s_;
  GroundRing r_;
  std::size_t pos_ = 0;
};

}  // namespace

RingElem RingElem::parse(const std::string& text, const GroundRing& r) {
  Frac f = ElemParser(text, r).parse();
  return normalize(r, 0, 0, f.num, f.den);
}

// ---------------------------------------------------------------- ResidueElem

ResidueElem::ResidueElem(const GroundRing& r, Poly value) : ring_(r), value_(reduce_residue(r, value)) {}

ResidueElem ResidueElem::operator-() const { return ResidueElem(ring_, -value_); }

ResidueElem operator+(const ResidueElem& a, const ResidueElem& b) {
  return ResidueElem(a.ring_, a.value_ + b.value_);
}

ResidueElem operator-(const ResidueElem& a, const ResidueElem& b) {
  return ResidueElem(a.ring_, a.value_ - b.value_);
}

ResidueElem operator*(const ResidueElem& a, const ResidueElem& b) {
  return ResidueElem(a.ring_, a.value_ * b.value_);
}

ResidueElem ResidueElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero residue");
  if (ring_.kind() == RingKind::IntegerLocal) return ResidueElem(ring_, Poly(1 / value_.coeff(0)));
  return ResidueElem(ring_, poly_inverse_mod(value_, ring_.sigma()));
}

RingElem ResidueElem::lift() const {
  if (ring_.kind() == RingKind::IntegerLocal) return RingElem::from_rational(ring_, value_.coeff(0));
  return RingElem::from_fraction(ring_, value_, Poly::constant(1));
}

std::string ResidueElem::to_string() const {
  if (ring_.kind() == RingKind::IntegerLocal) return value_.coeff(0).get_str();
  return value_.to_string();
}

// -------------------------------------------------------------- memoization

namespace {

using ElemKey = std::tuple<long, long, int, int, int>;

std::mutex memo_mu;
std::map<ElemKey, RingElem>& memo_table() {
  static std::map<ElemKey, RingElem> table;
  return table;
}

template <class F>
const RingElem& memoized(const ElemKey& key, F&& compute) {
  {
    std::lock_guard<std::mutex> lock(memo_mu);
    auto& t = memo_table();
    if (auto it = t.find(key); it != t.end()) return it->second;
  }
  RingElem value = compute();
  std::lock_guard<std::mutex> lock(memo_mu);
  return memo_table().emplace(key, std::move(value)).first->second;
}

}  // namespace

const RingElem& qint_elem(long n, int d, const GroundRing& r) {
  const ElemKey key{n, -1, d, static_cast<int>(r.kind()), r.param()};
  return memoized(key, [&] { return RingElem::embed(qint(n, d), r); });
}

const RingElem& qbinom_elem(long n, long k, int d, const GroundRing& r) {
  const ElemKey key{n, k, d, static_cast<int>(r.kind()), r.param()};
  return memoized(key, [&] { return RingElem::embed(qbinom(n, k, d), r); });
}

}  // namespace xtilt
