#include <set>
#include <stdexcept>

#include "xtilt/xcat.hpp"

namespace xtilt {

namespace {

std::vector<int> torsion_exponents(const Mat& g) {
  std::vector<int> out;
  for (int e : smith_normal_form(g, 0).exponents)
    if (e != 0) out.push_back(e);
  return out;
}

std::string shape(const Mat& a) { return std::to_string(a.rows()) + "x" + std::to_string(a.cols()); }

// E_mu F_mu = Ehat at every stored weight and at implicitly zero weights adjacent to the support.
void check_x2(const XObject& m, Report& rep, const std::string& id) {
  const auto& rs = m.rs();
  for (const auto& mu : m.region()) {
    const auto d = delta_space(m, mu);
    if (d.index.total == 0) {
      rep.add(id, mu, true);
      continue;
    }
    const auto h = hat_matrices(m, mu);
    const bool ok = d.E * d.F == h.Ehat;
    rep.add(id, mu, ok, ok ? "" : "E_mu F_mu differs from the commutation formula");
  }
  std::set<Weight> seen;
  for (const auto& mu : m.region()) {
    if (m.rank(mu) == 0) continue;
    for (std::size_t a = 0; a < rs.rank(); ++a) {
      const Weight nu = mu - rs.simple_root(a);
      if (m.in_region(nu) || !m.implicitly_zero(nu) || !seen.insert(nu).second) continue;
      const auto h = hat_matrices(m, nu);
      const bool ok = h.Ehat.is_zero();
      rep.add(id, nu, ok, ok ? "" : "commutation formula nonzero at an implicitly zero weight");
    }
  }
}

}  // namespace

Report check_axioms(const XObject& m) {
  Report rep;
  const auto& rs = m.rs();
  // (X1)
  for (const auto* ops : {&m.e_ops(), &m.f_ops()}) {
    const bool is_e = ops == &m.e_ops();
    for (const auto& [k, a] : *ops) {
      const Weight top = k.mu + k.n * rs.simple_root(k.alpha);
      const std::size_t rows = is_e ? m.rank(top) : m.rank(k.mu);
      const std::size_t cols = is_e ? m.rank(k.mu) : m.rank(top);
      std::string why;
      if (!m.in_region(k.mu) || !m.in_region(top)) why = "operator between weights outside the region";
      else if (a.rows() != rows || a.cols() != cols) why = "operator shape " + shape(a);
      else if (!a.in_ring()) why = "operator entry outside the ring";
      rep.add("X1", k.mu, why.empty(), why);
    }
  }
  for (const auto& t : m.tops())
    if (!m.in_region(t)) rep.add("X1", t, false, "top weight missing from the region");
  // (X2)
  check_x2(m, rep, "X2");
  // (X3)
  for (const auto& mu : m.region()) {
    const std::size_t r = m.rank(mu);
    if (r == 0) continue;
    const auto d = delta_space(m, mu);
    if (d.index.total == 0) {
      rep.add("X3a", mu, true);
      rep.add("X3b", mu, true);
      rep.add("X3c", mu, true);
      continue;
    }
    const Mat ef = d.E * d.F;
    const std::size_t rk_ef = rank(ef), rk_f = rank(d.F), rk_e = rank(d.E);
    rep.add("X3a", mu, rk_ef == rk_f,
            rk_ef == rk_f ? "" : "E_mu not injective on im F_mu: ranks " + std::to_string(rk_ef) + " < " + std::to_string(rk_f));
    rep.add("X3b", mu, rk_ef == rk_e,
            rk_ef == rk_e ? "" : "im E_mu / im E_mu F_mu not torsion: ranks " + std::to_string(rk_ef) + " < " + std::to_string(rk_e));
    if (m.ring().is_field()) {
      const bool ok = rk_ef == rk_f && rk_e == rk_f;
      rep.add("X3-field", mu, ok, ok ? "" : "M_mu is not ker E_mu + im F_mu");
    } else {
      const auto ex = torsion_exponents(d.F);
      std::string w;
      for (int e : ex) w += (w.empty() ? "" : ",") + std::to_string(e);
      rep.add("X3c", mu, ex.empty(), ex.empty() ? "" : "M_mu / im F_mu has torsion, exponents " + w);
    }
  }
  return rep;
}

Report verify_relations(const XObject& m) {
  Report rep;
  const auto& rs = m.rs();
  const GroundRing& ring = m.ring();
  check_x2(m, rep, "commutation");
  for (const auto& nu : m.region()) {
    if (m.rank(nu) == 0) continue;
    for (std::size_t ai = 0; ai < rs.rank(); ++ai) {
      const int a = static_cast<int>(ai);
      const Weight& al = rs.simple_root(a);
      const int bound = m.string_bound(nu, a);
      for (int total = 2; total <= bound; ++total) {
        if (m.rank(nu + total * al) == 0) continue;
        const Mat e_all = m.E(nu, a, total);
        const Mat f_all = m.F(nu, a, total);
        for (int n = 1; n < total; ++n) {
          const int mm = total - n;
          const RingElem& c = qbinom_elem(total, n, rs.d(a), ring);
          const bool ok_e = m.E(nu + n * al, a, mm) * m.E(nu, a, n) == e_all.scaled(c);
          rep.add("divided-power-E", nu, ok_e, ok_e ? "" : "alpha=" + std::to_string(a) + " m=" + std::to_string(mm) + " n=" + std::to_string(n));
          const bool ok_f = m.F(nu, a, n) * m.F(nu + n * al, a, mm) == f_all.scaled(c);
          rep.add("divided-power-F", nu, ok_f, ok_f ? "" : "alpha=" + std::to_string(a) + " m=" + std::to_string(mm) + " n=" + std::to_string(n));
        }
      }
      for (std::size_t bi = 0; bi < rs.rank(); ++bi) {
        if (bi == ai) continue;
        const int b = static_cast<int>(bi);
        const Weight& be = rs.simple_root(b);
        const int N = 1 - rs.a(bi, ai);
        const Weight top = nu + N * al + be;
        if (m.rank(top) == 0) continue;
        Mat se(ring, m.rank(top), m.rank(nu)), sf(ring, m.rank(nu), m.rank(top));
        for (int s = 0; s <= N; ++s) {
          const Weight mid = nu + (N - s) * al;
          Mat te = m.E(mid + be, a, s) * m.E(mid, b, 1) * m.E(nu, a, N - s);
          const Weight low = nu + s * al;
          Mat tf = m.F(nu, a, s) * m.F(low, b, 1) * m.F(low + be, a, N - s);
          if (s % 2) {
            se = se - te;
            sf = sf - tf;
          } else {
            se = se + te;
            sf = sf + tf;
          }
        }
        const std::string tag = "alpha=" + std::to_string(a) + " beta=" + std::to_string(b);
        rep.add("serre-E", nu, se.is_zero(), se.is_zero() ? "" : tag);
        rep.add("serre-F", nu, sf.is_zero(), sf.is_zero() ? "" : tag);
      }
    }
  }
  return rep;
}

Character weyl_multiplicities(const XObject& m) {
  Character out;
  for (const auto& mu : m.region()) {
    const std::size_t r = m.rank(mu);
    if (r == 0) continue;
    const auto d = delta_space(m, mu);
    std::size_t rk = 0;
    if (d.index.total > 0) {
      const auto s = smith_normal_form(d.F, 0);
      for (int e : s.exponents)
        if (e != 0) throw std::domain_error("M_mu / im F_mu has torsion at " + weight_to_string(mu));
      rk = s.rank();
    }
    if (r > rk) out[mu] = static_cast<long>(r - rk);
  }
  return out;
}

Report minimality_certificate(const XObject& m) {
  Report rep;
  for (const auto& mu : m.region()) {
    const auto d = delta_space(m, mu);
    if (m.rank(mu) == 0 || d.index.total == 0) {
      rep.add("minimal", mu, true);
      continue;
    }
    const auto rel = relative_invariants(d.E, d.E * d.F);
    const bool ok = rel.contained && rel.same_rank && rel.exponents.empty();
    rep.add("minimal", mu, ok, ok ? "" : "im E_mu F_mu is a proper sublattice of im E_mu");
  }
  return rep;
}

Report maximality_certificate(const XObject& m) {
  Report rep;
  for (const auto& mu : m.region()) {
    const auto d = delta_space(m, mu);
    if (m.rank(mu) == 0 || d.index.total == 0) {
      rep.add("maximal", mu, true);
      continue;
    }
    const bool ok = torsion_exponents(d.E).empty();
    rep.add("maximal", mu, ok, ok ? "" : "im E_mu is not saturated");
  }
  return rep;
}

}  // namespace xtilt
