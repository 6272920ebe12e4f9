#include "xtilt/laurent.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace xtilt {

LaurentPoly::LaurentPoly(Rational c) {
  if (c != 0) c_.emplace(0, std::move(c));
}

LaurentPoly LaurentPoly::monomial(Rational c, int exponent) {
  LaurentPoly p;
  if (c != 0) p.c_.emplace(exponent, std::move(c));
  return p;
}

LaurentPoly LaurentPoly::from_poly(const Poly& p, int shift) {
  LaurentPoly r;
  const auto& cs = p.coeffs();
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i] != 0) r.c_.emplace(static_cast<int>(i) + shift, cs[i]);
  return r;
}

Rational LaurentPoly::coeff(int e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Rational(0) : it->second;
}

std::pair<Poly, int> LaurentPoly::to_poly() const {
  if (c_.empty()) return {Poly(), 0};
  const int lo = min_exponent();
  std::vector<Rational> cs(max_exponent() - lo + 1, Rational(0));
  for (const auto& [e, c] : c_) cs[e - lo] = c;
  return {Poly(std::move(cs)), lo};
}

Rational LaurentPoly::eval_at_one() const {
  Rational s = 0;
  for (const auto& kv : c_) s += kv.second;
  return s;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& kv : r.c_) kv.second = -kv.second;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) {
    auto [it, inserted] = c_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) r += LaurentPoly::monomial(ca * cb, ea + eb);
  return r;
}

LaurentPoly LaurentPoly::exact_div(const LaurentPoly& b) const {
  if (b.is_zero()) throw std::domain_error("Laurent division by zero");
  if (is_zero()) return LaurentPoly();
  auto [pa, sa] = to_poly();
  auto [pb, sb] = b.to_poly();
  auto [q, r] = pa.divmod(pb);
  if (!r.is_zero()) throw std::logic_error("inexact Laurent polynomial division");
  return from_poly(q, sa - sb);
}

std::string LaurentPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    os << (c < 0 ? "-" : (first ? "" : "+"));
    first = false;
    const bool unit_coeff = mag == 1;
    if (!unit_coeff || e == 0) {
      os << mag.get_num();
      if (mag.get_den() != 1) os << '/' << mag.get_den();
      if (e != 0) os << '*';
    }
    if (e != 0) {
      os << 'v';
      if (e != 1) os << '^' << e;
    }
  }
  return os.str();
}

LaurentPoly qint(long n, int d) {
  if (d <= 0) throw std::invalid_argument("qint: d must be positive");
  LaurentPoly r;
  if (n == 0) return r;
  const long m = n > 0 ? n : -n;
  const Rational sign = n > 0 ? 1 : -1;
  for (long e = m - 1; e >= -(m - 1); e -= 2)
    r += LaurentPoly::monomial(sign, static_cast<int>(d * e));
  return r;
}

LaurentPoly qfactorial(long n, int d) {
  if (n < 0) throw std::invalid_argument("qfactorial: negative argument");
  LaurentPoly r(Rational(1));
  for (long i = 1; i <= n; ++i) r = r * qint(i, d);
  return r;
}

LaurentPoly qbinom(long n, long r, int d) {
  if (r < 0) throw std::invalid_argument("qbinom: negative r");
  static std::mutex mu;
  static std::map<std::tuple<long, long, int>, LaurentPoly> cache;
  const auto key = std::make_tuple(n, r, d);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  LaurentPoly num(Rational(1));
  for (long i = 0; i < r; ++i) num = num * qint(n - i, d);
  LaurentPoly result = num.exact_div(qfactorial(r, d));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, result);
  return result;
}

}  // namespace xtilt
