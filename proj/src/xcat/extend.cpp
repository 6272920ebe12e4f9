#include <algorithm>
#include <set>
#include <stdexcept>

#include "xtilt/xcat.hpp"

namespace xtilt {

void check_extendable(const XObject& m, const Weight& mu) {
  m.rs().check_weight(mu);
  if (m.in_region(mu)) throw std::invalid_argument("weight already present: " + weight_to_string(mu));
  for (std::size_t a = 0; a < m.rs().rank(); ++a) {
    const Weight up = mu + m.rs().simple_root(a);
    if (!m.in_closed_set(up))
      throw std::invalid_argument("extension at " + weight_to_string(mu) + " needs weight " + weight_to_string(up));
  }
}

ExtensionStep minimal_step(const XObject& m, const Weight& mu) {
  check_extendable(m, mu);
  ExtensionStep st;
  auto hat = hat_matrices(m, mu);
  st.index = std::move(hat.index);
  st.Ehat = std::move(hat.Ehat);
  const std::size_t total = st.index.total;
  st.gamma = Mat(m.ring(), total, 0);
  // M_mu has the basis F_hat(e_j), j in J, for columns J of Ehat generating its image.
  auto ech = reduced_echelon(st.Ehat);
  st.minimal_rank = ech.pivots.size();
  if (!ech.R.in_ring()) {
    // Ehat = B C with B a basis of its image; the columns whose coordinates
    // stay independent modulo the maximal ideal generate the image.
    const auto s = smith_normal_form(st.Ehat, kTrackVinv);
    const Mat c = s.Vinv.row_range(0, s.rank());
    ech.pivots = ResMat::of(c).rref();
    ech.R = inverse(select_columns(c, ech.pivots)) * c;
  }
  st.Etilde = select_columns(st.Ehat, ech.pivots);
  st.Ftilde = ech.R;
  st.basis_columns = ech.pivots;
  st.E = st.Etilde;
  st.F = st.Ftilde;
  return st;
}

ExtensionStep maximal_step(const XObject& m, const Weight& mu) {
  ExtensionStep st = minimal_step(m, mu);
  if (st.minimal_rank == 0) return st;
  const auto s = smith_normal_form(st.Etilde, kTrackUinv);
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < s.rank(); ++i)
    if (s.exponents[i] != 0) {
      st.exponents.push_back(s.exponents[i]);
      cols.push_back(i);
    }
  const std::size_t total = st.index.total;
  st.gamma = Mat(m.ring(), total, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) st.gamma.set_block(0, j, s.Uinv.col_range(cols[j], 1));
  st.E = Mat::hcat(st.Etilde, st.gamma);
  st.F = Mat::vcat(st.Ftilde, Mat(m.ring(), cols.size(), total));
  return st;
}

void apply_step(XObject& m, const Weight& mu, const ExtensionStep& step) {
  m.add_weight(mu, step.rank());
  if (step.rank() == 0) return;
  for (const auto& b : step.index.blocks) {
    m.set_e(mu, b.alpha, b.n, step.E.row_range(b.offset, b.rank));
    m.set_f(mu, b.alpha, b.n, step.F.col_range(b.offset, b.rank));
  }
}

XObject minimal_extend(const XObject& m, const Weight& mu) {
  XObject out = m;
  apply_step(out, mu, minimal_step(m, mu));
  return out;
}

XObject maximal_extend(const XObject& m, const Weight& mu) {
  XObject out = m;
  apply_step(out, mu, maximal_step(m, mu));
  return out;
}

std::vector<Weight> build_weights(const RootSystem& rs, const Weight& lambda, const BuildOptions& opt) {
  rs.check_weight(lambda);
  if (opt.explicit_weights) {
    std::set<Weight> set;
    for (const auto& w : *opt.explicit_weights) {
      rs.check_weight(w);
      if (!rs.leq(w, lambda)) throw std::invalid_argument("explicit weight not below lambda: " + weight_to_string(w));
      set.insert(w);
    }
    set.insert(lambda);
    for (const auto& w : set)
      for (std::size_t a = 0; a < rs.rank(); ++a) {
        const Weight up = w + rs.simple_root(a);
        if (rs.leq(up, lambda) && !set.count(up))
          throw std::invalid_argument("explicit weight set is not closed: " + weight_to_string(up) + " missing");
      }
    std::vector<Weight> out(set.begin(), set.end());
    std::sort(out.begin(), out.end(), [&](const Weight& x, const Weight& y) { return rs.processing_before(x, y); });
    return out;
  }
  if (!rs.is_dominant(lambda))
    throw std::invalid_argument("full builds need a dominant weight; supply an explicit weight set");
  return weights_below(rs, lambda, opt.prune, opt.height_bound);
}

std::vector<Weight> frontier(const XObject& m) {
  const auto& rs = m.rs();
  std::set<Weight> seen;
  std::vector<Weight> out;
  for (const auto& w : m.region()) {
    if (m.rank(w) == 0) continue;
    for (std::size_t a = 0; a < rs.rank(); ++a) {
      const Weight down = w - rs.simple_root(a);
      if (m.in_region(down) || seen.count(down)) continue;
      bool below = false;
      for (const auto& t : m.tops()) below = below || rs.leq(down, t);
      if (!below) continue;
      seen.insert(down);
      out.push_back(down);
    }
  }
  std::sort(out.begin(), out.end(), [&](const Weight& x, const Weight& y) { return rs.processing_before(x, y); });
  return out;
}

std::vector<FrontierResult> frontier_ranks(const XObject& m, bool maximal) {
  std::vector<FrontierResult> out;
  for (const auto& w : frontier(m)) {
    bool ok = true;
    for (std::size_t a = 0; a < m.rs().rank(); ++a) ok = ok && m.in_closed_set(w + m.rs().simple_root(a));
    if (!ok) continue;
    const auto st = maximal ? maximal_step(m, w) : minimal_step(m, w);
    out.push_back({w, st.rank()});
  }
  return out;
}

namespace {

XObject build(const RootSystem& rs, const GroundRing& ring, const Weight& lambda, const BuildOptions& opt,
              bool maximal) {
  ring.check_generic();
  const auto weights = build_weights(rs, lambda, opt);
  const bool hull = !opt.explicit_weights && opt.prune;
  XObject m = seed_object(rs, ring, lambda, hull);
  for (const auto& mu : weights) {
    if (mu == lambda) continue;
    const auto st = maximal ? maximal_step(m, mu) : minimal_step(m, mu);
    apply_step(m, mu, st);
    if (opt.explicit_weights && st.rank() > 0 && st.F.cols() > 0) {
      for (int e : smith_normal_form(st.F, 0).exponents)
        if (e != 0) throw std::domain_error("torsion in M_mu / im F_mu at " + weight_to_string(mu));
    }
  }
  if (opt.verify_frontier) {
    for (const auto& fr : frontier_ranks(m, maximal))
      if (fr.rank != 0)
        throw std::runtime_error("frontier weight " + weight_to_string(fr.weight) + " has rank " +
                                 std::to_string(fr.rank));
  }
  return m;
}

}  // namespace

XObject build_smin(const RootSystem& rs, const GroundRing& ring, const Weight& lambda, const BuildOptions& opt) {
  return build(rs, ring, lambda, opt, false);
}

XObject build_smax(const RootSystem& rs, const GroundRing& ring, const Weight& lambda, const BuildOptions& opt) {
  return build(rs, ring, lambda, opt, true);
}

}  // namespace xtilt
