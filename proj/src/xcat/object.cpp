#include <algorithm>
#include <set>
#include <stdexcept>

#include "xtilt/xcat.hpp"

namespace xtilt {

XObject::XObject(const GroundRing& ring, const RootSystem& rs) : ring_(ring), rs_(rs) {}

std::size_t XObject::rank(const Weight& mu) const {
  auto it = ranks_.find(mu);
  return it == ranks_.end() ? 0 : it->second;
}

void XObject::set_support(std::vector<Weight> tops, bool hull) {
  tops_ = std::move(tops);
  hull_ = hull;
}

bool XObject::implicitly_zero(const Weight& nu) const {
  if (in_region(nu)) return false;
  const std::vector<Weight>& tops = tops_.empty() ? region_ : tops_;
  bool below = false;
  for (const auto& t : tops)
    if (rs_.leq(nu, t)) {
      below = true;
      break;
    }
  if (!below) return true;
  if (!hull_) return false;
  const Weight dom = rs_.dominant_conjugate(nu);
  for (const auto& t : tops)
    if (rs_.leq(dom, t)) return false;
  return true;
}

void XObject::add_weight(const Weight& mu, std::size_t rank) {
  rs_.check_weight(mu);
  if (in_region(mu)) throw std::invalid_argument("weight already present: " + weight_to_string(mu));
  ranks_[mu] = rank;
  region_.push_back(mu);
}

namespace {

void check_shape(const XObject& m, const Mat& a, std::size_t rows, std::size_t cols, const char* what) {
  if (a.rows() != rows || a.cols() != cols)
    throw std::invalid_argument(std::string(what) + ": operator has wrong shape");
  if (a.ring() != m.ring() && !a.empty()) throw std::invalid_argument(std::string(what) + ": ring mismatch");
}

}  // namespace

void XObject::set_e(const Weight& mu, int alpha, int n, Mat m) {
  if (n <= 0) throw std::invalid_argument("set_e: n must be positive");
  const Weight top = mu + n * rs_.simple_root(alpha);
  check_shape(*this, m, rank(top), rank(mu), "set_e");
  if (rank(top) == 0 || rank(mu) == 0) return;
  e_[OpKey{mu, alpha, n}] = std::move(m);
}

void XObject::set_f(const Weight& mu, int alpha, int n, Mat m) {
  if (n <= 0) throw std::invalid_argument("set_f: n must be positive");
  const Weight top = mu + n * rs_.simple_root(alpha);
  check_shape(*this, m, rank(mu), rank(top), "set_f");
  if (rank(top) == 0 || rank(mu) == 0) return;
  f_[OpKey{mu, alpha, n}] = std::move(m);
}

void XObject::remove_weight(const Weight& mu) {
  if (!in_region(mu)) return;
  ranks_.erase(mu);
  region_.erase(std::find(region_.begin(), region_.end(), mu));
  auto touches = [&](const OpKey& k) {
    return k.mu == mu || k.mu + k.n * rs_.simple_root(k.alpha) == mu;
  };
  for (auto* ops : {&e_, &f_})
    for (auto it = ops->begin(); it != ops->end();) it = touches(it->first) ? ops->erase(it) : std::next(it);
}

Mat XObject::E(const Weight& mu, int alpha, int n) const {
  if (n == 0) return Mat::identity(ring_, rank(mu));
  auto it = e_.find(OpKey{mu, alpha, n});
  if (it != e_.end()) return it->second;
  return Mat(ring_, rank(mu + n * rs_.simple_root(alpha)), rank(mu));
}

Mat XObject::F(const Weight& mu, int alpha, int n) const {
  if (n == 0) return Mat::identity(ring_, rank(mu));
  auto it = f_.find(OpKey{mu, alpha, n});
  if (it != f_.end()) return it->second;
  return Mat(ring_, rank(mu), rank(mu + n * rs_.simple_root(alpha)));
}

int XObject::string_bound(const Weight& mu, int alpha) const {
  const std::vector<Weight>& tops = tops_.empty() ? region_ : tops_;
  const Weight& a = rs_.simple_root(alpha);
  int n = 0;
  Weight w = mu + a;
  for (;;) {
    bool below = false;
    for (const auto& t : tops)
      if (rs_.leq(w, t)) {
        below = true;
        break;
      }
    if (!below) return n;
    ++n;
    w = w + a;
  }
}

bool operator==(const XObject& a, const XObject& b) {
  return a.ring_ == b.ring_ && a.rs_ == b.rs_ && a.region_ == b.region_ && a.ranks_ == b.ranks_ &&
         a.tops_ == b.tops_ && a.hull_ == b.hull_ && a.e_ == b.e_ && a.f_ == b.f_;
}

const DeltaBlock* DeltaIndex::find(int alpha, int n) const {
  for (const auto& b : blocks)
    if (b.alpha == alpha && b.n == n) return &b;
  return nullptr;
}

DeltaIndex delta_index(const XObject& m, const Weight& mu) {
  DeltaIndex idx;
  const auto& rs = m.rs();
  for (std::size_t a = 0; a < rs.rank(); ++a) {
    const int bound = m.string_bound(mu, static_cast<int>(a));
    for (int n = 1; n <= bound; ++n) {
      const Weight w = mu + n * rs.simple_root(a);
      const std::size_t r = m.rank(w);
      if (r == 0) continue;
      idx.blocks.push_back({static_cast<int>(a), n, idx.total, r, w});
      idx.total += r;
    }
  }
  return idx;
}

DeltaSpace delta_space(const XObject& m, const Weight& mu) {
  DeltaSpace d;
  d.index = delta_index(m, mu);
  const std::size_t r = m.rank(mu);
  d.E = Mat(m.ring(), d.index.total, r);
  d.F = Mat(m.ring(), r, d.index.total);
  for (const auto& b : d.index.blocks) {
    d.E.set_block(b.offset, 0, m.E(mu, b.alpha, b.n));
    d.F.set_block(0, b.offset, m.F(mu, b.alpha, b.n));
  }
  return d;
}

HatMatrices hat_matrices(const XObject& m, const Weight& mu) {
  HatMatrices h;
  h.index = delta_index(m, mu);
  const GroundRing& ring = m.ring();
  const auto& rs = m.rs();
  h.Ehat = Mat(ring, h.index.total, h.index.total);
  h.Fhat = Mat::identity(ring, h.index.total);
  for (const auto& row : h.index.blocks) {
    const Weight target = mu + row.n * rs.simple_root(row.alpha);
    for (const auto& col : h.index.blocks) {
      const Weight source = mu + col.n * rs.simple_root(col.alpha);
      Mat block(ring, row.rank, col.rank);
      if (row.alpha != col.alpha) {
        block = m.F(target, col.alpha, col.n) * m.E(source, row.alpha, row.n);
      } else {
        const int a = row.alpha;
        const long base = rs.pairing(mu, a) + row.n + col.n;
        for (int r = 0; r <= std::min(row.n, col.n); ++r) {
          Mat term = m.F(target, a, col.n - r) * m.E(source, a, row.n - r);
          if (term.is_zero()) continue;
          block = block + term.scaled(qbinom_elem(base, r, rs.d(a), ring));
        }
      }
      h.Ehat.set_block(row.offset, col.offset, block);
    }
  }
  return h;
}

XObject seed_object(const RootSystem& rs, const GroundRing& ring, const Weight& lambda, bool hull) {
  XObject m(ring, rs);
  m.add_weight(lambda, 1);
  m.set_support({lambda}, hull);
  return m;
}

XObject restrict_to(const XObject& m, const std::vector<Weight>& subset) {
  const auto& rs = m.rs();
  std::set<Weight> keep(subset.begin(), subset.end());
  for (const auto& w : keep) {
    if (!m.in_region(w)) throw std::invalid_argument("restrict: weight outside the region: " + weight_to_string(w));
    for (std::size_t a = 0; a < rs.rank(); ++a) {
      const Weight up = w + rs.simple_root(a);
      if (m.in_region(up) && !keep.count(up))
        throw std::invalid_argument("restrict: weight set is not closed at " + weight_to_string(w));
    }
  }
  XObject out(m.ring(), rs);
  out.set_support(m.tops(), m.hull());
  for (const auto& w : m.region())
    if (keep.count(w)) out.add_weight(w, m.rank(w));
  for (const auto& [k, a] : m.e_ops())
    if (keep.count(k.mu) && keep.count(k.mu + k.n * rs.simple_root(k.alpha))) out.set_e(k.mu, k.alpha, k.n, a);
  for (const auto& [k, a] : m.f_ops())
    if (keep.count(k.mu) && keep.count(k.mu + k.n * rs.simple_root(k.alpha))) out.set_f(k.mu, k.alpha, k.n, a);
  return out;
}

XObject direct_sum(const XObject& a, const XObject& b) {
  if (a.ring() != b.ring() || a.rs() != b.rs()) throw std::invalid_argument("direct_sum: ring or root system mismatch");
  const auto& rs = a.rs();
  std::vector<Weight> tops = a.tops();
  for (const auto& t : b.tops())
    if (std::find(tops.begin(), tops.end(), t) == tops.end()) tops.push_back(t);
  std::set<Weight> all(a.region().begin(), a.region().end());
  all.insert(b.region().begin(), b.region().end());
  for (const auto& w : all)
    if (!a.in_closed_set(w) || !b.in_closed_set(w))
      throw std::invalid_argument("direct_sum: supports are incompatible at " + weight_to_string(w));
  std::vector<Weight> order(all.begin(), all.end());
  std::sort(order.begin(), order.end(), [&](const Weight& x, const Weight& y) { return rs.processing_before(x, y); });

  XObject out(a.ring(), rs);
  out.set_support(tops, a.hull() && b.hull());
  for (const auto& w : order) out.add_weight(w, a.rank(w) + b.rank(w));
  auto block_diag = [&](const Mat& x, const Mat& y) {
    Mat s(a.ring(), x.rows() + y.rows(), x.cols() + y.cols());
    s.set_block(0, 0, x);
    s.set_block(x.rows(), x.cols(), y);
    return s;
  };
  std::set<OpKey> keys;
  for (const auto* ops : {&a.e_ops(), &b.e_ops()})
    for (const auto& kv : *ops) keys.insert(kv.first);
  for (const auto& k : keys) out.set_e(k.mu, k.alpha, k.n, block_diag(a.E(k.mu, k.alpha, k.n), b.E(k.mu, k.alpha, k.n)));
  keys.clear();
  for (const auto* ops : {&a.f_ops(), &b.f_ops()})
    for (const auto& kv : *ops) keys.insert(kv.first);
  for (const auto& k : keys) out.set_f(k.mu, k.alpha, k.n, block_diag(a.F(k.mu, k.alpha, k.n), b.F(k.mu, k.alpha, k.n)));
  return out;
}

Character character(const XObject& m) {
  Character c;
  for (const auto& w : m.region())
    if (m.rank(w) > 0) c[w] = static_cast<long>(m.rank(w));
  return c;
}

RingElem to_fraction_field(const RingElem& x) {
  const GroundRing& r = x.ring();
  if (r.is_field()) return x;
  const GroundRing k = r.fraction_field();
  if (x.is_zero()) return RingElem::zero(k);
  if (r.kind() == RingKind::IntegerLocal) {
    Rational c = x.num().coeff(0);
    Integer pk = 1;
    for (int i = 0; i < std::abs(x.k()); ++i) pk *= r.param();
    if (x.k() >= 0)
      c *= Rational(pk);
    else
      c /= Rational(pk);
    return RingElem::from_rational(k, c);
  }
  Poly num = x.num(), den = x.den();
  for (int i = 0; i < std::abs(x.k()); ++i) {
    if (x.k() > 0)
      num = num * r.sigma();
    else
      den = den * r.sigma();
  }
  return RingElem::from_fraction(k, num, den, x.v_shift());
}

XObject base_change_to_fraction_field(const XObject& m) {
  if (m.ring().is_field()) return m;
  const GroundRing k = m.ring().fraction_field();
  auto convert = [&](const Mat& a) {
    Mat out(k, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = to_fraction_field(a(i, j));
    return out;
  };
  XObject out(k, m.rs());
  out.set_support(m.tops(), m.hull());
  for (const auto& w : m.region()) out.add_weight(w, m.rank(w));
  for (const auto& [key, a] : m.e_ops()) out.set_e(key.mu, key.alpha, key.n, convert(a));
  for (const auto& [key, a] : m.f_ops()) out.set_f(key.mu, key.alpha, key.n, convert(a));
  return out;
}

ResidueObject base_change_to_residue(const XObject& m) {
  if (!m.ring().is_dvr()) throw std::invalid_argument("residue base change needs a local ring");
  ResidueObject out;
  for (const auto& w : m.region()) out.ranks[w] = m.rank(w);
  for (const auto& [key, a] : m.e_ops()) out.e[key] = ResMat::of(a);
  for (const auto& [key, a] : m.f_ops()) out.f[key] = ResMat::of(a);
  return out;
}

}  // namespace xtilt
