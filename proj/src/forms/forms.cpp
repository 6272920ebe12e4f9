#include "xtilt/forms.hpp"

#include <set>
#include <stdexcept>

namespace xtilt {

namespace {

/// Pivot columns of the Gram over the residue field (over a field: the Gram itself).
std::vector<std::size_t> residue_pivots(const Mat& g) {
  if (g.ring().is_field()) return reduced_echelon(g).pivots;
  return ResMat::of(g).rref();
}

bool is_symmetric(const Mat& g) { return g.rows() == g.cols() && g == g.transpose(); }

/// Gram of the minimal extension at mu in the basis F_tilde(e_j), j in J.
Mat minimal_gram(const ExtensionStep& st, const Mat& gd) {
  if (st.minimal_rank == 0) return Mat(gd.ring(), 0, 0);
  return select_columns(st.Etilde.transpose() * gd, st.basis_columns);
}

}  // namespace

Mat GradedForm::at(const XObject& m, const Weight& mu) const {
  auto it = gram.find(mu);
  if (it != gram.end()) return it->second;
  return Mat(m.ring(), m.rank(mu), m.rank(mu));
}

GradedForm seed_form(const XObject& seed, const Weight& lambda) {
  GradedForm b;
  b.gram[lambda] = Mat::identity(seed.ring(), seed.rank(lambda));
  return b;
}

Mat delta_gram(const XObject& m, const GradedForm& b, const Weight& mu) {
  const auto idx = delta_index(m, mu);
  Mat g(m.ring(), idx.total, idx.total);
  for (const auto& blk : idx.blocks) g.set_block(blk.offset, blk.offset, b.at(m, blk.weight));
  return g;
}

bool is_nondegenerate(const Mat& gram) { return gram.rows() == 0 || is_invertible_over_ring(gram); }

std::size_t radical_rank(const Mat& gram) {
  if (gram.rows() == 0) return 0;
  return gram.rows() - residue_pivots(gram).size();
}

Report check_form(const XObject& m, const GradedForm& b) {
  Report rep;
  for (const auto& [w, g] : b.gram)
    if (!m.in_region(w) && !g.empty()) rep.add("form-shape", w, false, "Gram at a weight outside the region");
  for (const auto& mu : m.region()) {
    const std::size_t r = m.rank(mu);
    if (r == 0) continue;
    const Mat g = b.at(m, mu);
    if (g.rows() != r || g.cols() != r) {
      rep.add("form-shape", mu, false, "Gram " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()));
      continue;
    }
    if (!g.in_ring()) rep.add("form-ring", mu, false, "Gram entry outside the ring");
    const bool sym = is_symmetric(g);
    rep.add("symmetric", mu, sym, sym ? "" : "Gram is not symmetric");
    const bool nd = g.in_ring() && is_nondegenerate(g);
    rep.add("nondegenerate", mu, nd, nd ? "" : "radical rank " + std::to_string(g.in_ring() ? radical_rank(g) : r));
  }
  std::set<OpKey> keys;
  for (const auto& [k, a] : m.e_ops()) keys.insert(k);
  for (const auto& [k, a] : m.f_ops()) keys.insert(k);
  for (const auto& k : keys) {
    const Weight top = k.mu + k.n * m.rs().simple_root(k.alpha);
    const Mat gt = b.at(m, top), gm = b.at(m, k.mu);
    if (gt.rows() != m.rank(top) || gm.rows() != m.rank(k.mu)) continue;
    const bool ok = gt * m.E(k.mu, k.alpha, k.n) == m.F(k.mu, k.alpha, k.n).transpose() * gm;
    rep.add("contravariant", k.mu, ok, ok ? "" : "alpha=" + std::to_string(k.alpha) + " n=" + std::to_string(k.n));
  }
  return rep;
}

GradedForm extend_form_minimal(const XObject& mprime, const GradedForm& bprime, const Weight& mu) {
  const auto st = minimal_step(mprime, mu);
  GradedForm b = bprime;
  b.gram[mu] = minimal_gram(st, delta_gram(mprime, bprime, mu));
  return b;
}

std::pair<XObject, GradedForm> complete_nondegenerate(const XObject& mprime, const GradedForm& bprime,
                                                      const Weight& mu) {
  auto st = minimal_step(mprime, mu);
  const Mat gd = delta_gram(mprime, bprime, mu);
  if (!is_nondegenerate(gd))
    throw std::domain_error("form is degenerate on M_{delta mu} at " + weight_to_string(mu));
  const Mat gt = minimal_gram(st, gd);
  XObject m = mprime;
  GradedForm b = bprime;
  if (is_nondegenerate(gt)) {
    apply_step(m, mu, st);
    b.gram[mu] = gt;
    return {std::move(m), std::move(b)};
  }
  // S pairs with the non-pivot coordinates of the residue Gram; the pivot
  // coordinates span a complement of the radical.
  const GroundRing& ring = mprime.ring();
  const std::size_t r = gt.rows();
  const auto piv = residue_pivots(gt);
  std::vector<std::size_t> free;
  for (std::size_t i = 0, p = 0; i < r; ++i) {
    if (p < piv.size() && piv[p] == i) ++p;
    else free.push_back(i);
  }
  const std::size_t s = free.size();
  Mat y(ring, r, s);
  for (std::size_t l = 0; l < s; ++l) y(free[l], l) = RingElem::one(ring);
  Mat g(ring, r + s, r + s);
  g.set_block(0, 0, gt);
  g.set_block(0, r, y);
  g.set_block(r, 0, y.transpose());
  const Mat eprime = inverse(gd) * st.Ftilde.transpose() * y;
  st.E = Mat::hcat(st.Etilde, eprime);
  st.F = Mat::vcat(st.Ftilde, Mat(ring, s, st.index.total));
  apply_step(m, mu, st);
  b.gram[mu] = g;
  return {std::move(m), std::move(b)};
}

std::pair<XObject, GradedForm> build_smax_with_form(const RootSystem& rs, const GroundRing& ring,
                                                    const Weight& lambda) {
  ring.check_generic();
  const auto weights = build_weights(rs, lambda, BuildOptions{});
  XObject m = seed_object(rs, ring, lambda, true);
  GradedForm b = seed_form(m, lambda);
  for (const auto& mu : weights) {
    if (mu == lambda) continue;
    auto next = complete_nondegenerate(m, b, mu);
    m = std::move(next.first);
    b = std::move(next.second);
  }
  return {std::move(m), std::move(b)};
}

}  // namespace xtilt
