#include <stdexcept>

#include "xtilt/xcat.hpp"

namespace xtilt {

namespace {

Mat hom_at(const HomMap& f, const XObject& m, const XObject& n, const Weight& w) {
  auto it = f.find(w);
  if (it != f.end()) return it->second;
  return Mat(m.ring(), n.rank(w), m.rank(w));
}

}  // namespace

HomStep extend_hom_step(const HomMap& f, const XObject& m, const XObject& n, const Weight& mu) {
  const GroundRing& ring = m.ring();
  HomStep out;
  const auto dm = delta_space(m, mu);
  const auto dn = delta_space(n, mu);
  const std::size_t rm = m.rank(mu), rn = n.rank(mu);

  // f on M_{delta mu} -> N_{delta mu}, block diagonal
  Mat fd(ring, dn.index.total, dm.index.total);
  for (const auto& b : dm.index.blocks) {
    const DeltaBlock* c = dn.index.find(b.alpha, b.n);
    if (!c) continue;
    const Mat fw = hom_at(f, m, n, b.weight);
    if (fw.rows() != c->rank || fw.cols() != b.rank)
      throw std::invalid_argument("extend_hom: map has wrong shape at " + weight_to_string(b.weight));
    fd.set_block(c->offset, b.offset, fw);
  }

  Mat basis = Mat::identity(ring, rm), U = Mat::identity(ring, rm);
  Mat images(ring, rn, 0);
  std::size_t r = 0;
  if (dm.index.total > 0 && rm > 0) {
    const auto s = smith_normal_form(dm.F, kTrackU | kTrackUinv | kTrackV);
    for (int e : s.exponents)
      if (e != 0) {
        out.witness = "M_mu / im F_mu has torsion at " + weight_to_string(mu);
        return out;
      }
    r = s.rank();
    basis = s.Uinv;
    U = s.U;
    images = dn.F * fd * s.V.col_range(0, r);
  }
  const Mat comp = basis.col_range(r, rm - r);
  const Mat rhs = fd * dm.E * comp;
  Mat lifts(ring, rn, comp.cols());
  if (rn == 0 || dn.index.total == 0) {
    if (!rhs.is_zero()) {
      out.witness = "no lift at " + weight_to_string(mu) + ": target weight space cannot carry f E(d)";
      return out;
    }
  } else if (comp.cols() > 0) {
    auto x = solve_columns_in_span(dn.E, rhs);
    if (!x) {
      for (std::size_t j = 0; j < rhs.cols(); ++j)
        if (!solve_in_span(dn.E, rhs.col_range(j, 1))) {
          out.witness = "f E(d) outside E(N_mu) at " + weight_to_string(mu) + ", complement column " + std::to_string(j) +
                        ": " + rhs.col_range(j, 1).transpose().to_string();
          break;
        }
      return out;
    }
    lifts = *x;
  }
  out.f = Mat::hcat(images, lifts) * U;
  out.ok = true;
  return out;
}

std::optional<HomMap> extend_hom(const HomMap& seed, const XObject& m, const XObject& n, std::string* witness) {
  if (m.ring() != n.ring() || m.rs() != n.rs()) throw std::invalid_argument("extend_hom: ring or root system mismatch");
  HomMap f;
  for (const auto& [w, a] : seed)
    if (m.in_region(w)) f[w] = a;
  for (const auto& mu : m.region()) {
    if (f.count(mu)) continue;
    auto st = extend_hom_step(f, m, n, mu);
    if (!st.ok) {
      if (witness) *witness = st.witness;
      return std::nullopt;
    }
    f[mu] = std::move(st.f);
  }
  return f;
}

Report check_morphism(const HomMap& f, const XObject& m, const XObject& n) {
  Report rep;
  const auto& rs = m.rs();
  for (const auto& mu : m.region()) {
    const Mat fm = hom_at(f, m, n, mu);
    if (fm.rows() != n.rank(mu) || fm.cols() != m.rank(mu)) {
      rep.add("hom-shape", mu, false, "shape mismatch");
      continue;
    }
    if (!fm.in_ring()) rep.add("hom-ring", mu, false, "entries outside the ring");
    for (std::size_t ai = 0; ai < rs.rank(); ++ai) {
      const int a = static_cast<int>(ai);
      const int bound = m.string_bound(mu, a);
      for (int k = 1; k <= bound; ++k) {
        const Weight up = mu + k * rs.simple_root(a);
        if (!m.in_region(up)) continue;
        const Mat fu = hom_at(f, m, n, up);
        const bool ok_e = n.E(mu, a, k) * fm == fu * m.E(mu, a, k);
        const bool ok_f = fm * m.F(mu, a, k) == n.F(mu, a, k) * fu;
        const std::string tag = "alpha=" + std::to_string(a) + " n=" + std::to_string(k);
        rep.add("hom-E", mu, ok_e, ok_e ? "" : tag);
        rep.add("hom-F", mu, ok_f, ok_f ? "" : tag);
      }
    }
  }
  return rep;
}

bool is_isomorphism(const HomMap& f, const XObject& m, const XObject& n) {
  if (!check_morphism(f, m, n).passed()) return false;
  for (const auto& w : n.region())
    if (n.rank(w) > 0 && !m.in_region(w)) return false;
  for (const auto& mu : m.region()) {
    if (m.rank(mu) != n.rank(mu)) return false;
    if (m.rank(mu) == 0) continue;
    if (!is_invertible_over_ring(hom_at(f, m, n, mu))) return false;
  }
  return true;
}

}  // namespace xtilt
