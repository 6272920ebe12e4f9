#include <stdexcept>
#include <utility>

#include "xtilt/linalg.hpp"

namespace xtilt {

namespace {

RingElem pi_power(const GroundRing& r, int k) {
  RingElem x = RingElem::one(r);
  if (r.is_field() || k == 0) return x;
  const RingElem pi = RingElem::uniformizer(r);
  for (int i = 0; i < k; ++i) x = x * pi;
  return x;
}

void swap_rows(Mat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(Mat& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

}  // namespace

SmithDecomposition smith_normal_form(const Mat& m, unsigned track) {
  const GroundRing& r = m.ring();
  const std::size_t nr = m.rows(), nc = m.cols();
  const bool tu = track & kTrackU, tui = track & kTrackUinv, tv = track & kTrackV, tvi = track & kTrackVinv;
  Mat a = m;
  SmithDecomposition s{tu ? Mat::identity(r, nr) : Mat(), tui ? Mat::identity(r, nr) : Mat(),
                       tv ? Mat::identity(r, nc) : Mat(), tvi ? Mat::identity(r, nc) : Mat(), {}};
  for (std::size_t t = 0; t < std::min(nr, nc); ++t) {
    std::size_t pr = 0, pc = 0;
    int best = kInfiniteValuation;
    for (std::size_t i = t; i < nr; ++i)
      for (std::size_t j = t; j < nc; ++j) {
        const int val = a(i, j).valuation();
        if (val < best) {
          best = val;
          pr = i;
          pc = j;
        }
      }
    if (best == kInfiniteValuation) break;
    if (best < 0) throw std::domain_error("smith_normal_form: entry outside the ring");

    swap_rows(a, t, pr);
    if (tu) swap_rows(s.U, t, pr);
    if (tui) swap_cols(s.Uinv, t, pr);
    swap_cols(a, t, pc);
    if (tv) swap_cols(s.V, t, pc);
    if (tvi) swap_rows(s.Vinv, t, pc);

    // Scale row t so that the pivot becomes exactly pi^best.
    const RingElem u = a(t, t).unit_part();
    if (!u.is_one()) {
      const RingElem uinv = u.inverse();
      for (std::size_t j = t; j < nc; ++j)
        if (!a(t, j).is_zero()) a(t, j) = a(t, j) * uinv;
      if (tu)
        for (std::size_t j = 0; j < nr; ++j) s.U(t, j) = s.U(t, j) * uinv;
      if (tui)
        for (std::size_t i = 0; i < nr; ++i) s.Uinv(i, t) = s.Uinv(i, t) * u;
    }
    const RingElem pivot_inv = a(t, t).inverse();

    for (std::size_t i = t + 1; i < nr; ++i) {
      if (a(i, t).is_zero()) continue;
      const RingElem c = a(i, t) * pivot_inv;
      for (std::size_t j = t; j < nc; ++j)
        if (!a(t, j).is_zero()) a(i, j) -= c * a(t, j);
      if (tu)
        for (std::size_t j = 0; j < nr; ++j)
          if (!s.U(t, j).is_zero()) s.U(i, j) -= c * s.U(t, j);
      if (tui)
        for (std::size_t k = 0; k < nr; ++k)
          if (!s.Uinv(k, i).is_zero()) s.Uinv(k, t) += c * s.Uinv(k, i);
    }
    for (std::size_t j = t + 1; j < nc; ++j) {
      if (a(t, j).is_zero()) continue;
      const RingElem c = a(t, j) * pivot_inv;
      a(t, j) = RingElem::zero(r);
      if (tv)
        for (std::size_t k = 0; k < nc; ++k)
          if (!s.V(k, t).is_zero()) s.V(k, j) -= c * s.V(k, t);
      if (tvi)
        for (std::size_t k = 0; k < nc; ++k)
          if (!s.Vinv(j, k).is_zero()) s.Vinv(t, k) += c * s.Vinv(j, k);
    }
    s.exponents.push_back(r.is_field() ? 0 : best);
  }
  return s;
}

Mat kernel_saturated(const Mat& m) {
  const auto s = smith_normal_form(m, kTrackV);
  return s.V.col_range(s.rank(), m.cols() - s.rank());
}

Saturation saturation_with_invariants(const Mat& g) {
  const auto s = smith_normal_form(g, kTrackUinv);
  Saturation out;
  out.S = s.Uinv.col_range(0, s.rank());
  for (int e : s.exponents)
    if (e != 0) out.exponents.push_back(e);
  return out;
}

std::optional<Mat> solve_columns_in_span(const Mat& g, const Mat& b) {
  if (g.rows() != b.rows()) throw std::invalid_argument("solve_in_span: shape mismatch");
  const GroundRing& r = g.ring();
  const auto s = smith_normal_form(g, kTrackU | kTrackV);
  const Mat c = s.U * b;
  const std::size_t rk = s.rank();
  Mat y(r, g.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < g.rows(); ++i) {
      const RingElem& ci = c(i, j);
      if (i >= rk) {
        if (!ci.is_zero()) return std::nullopt;
        continue;
      }
      if (ci.valuation() < s.exponents[i]) return std::nullopt;
      y(i, j) = s.exponents[i] == 0 ? ci : ci * pi_power(r, s.exponents[i]).inverse();
    }
  }
  return s.V * y;
}

std::optional<Mat> solve_in_span(const Mat& g, const Mat& b) {
  if (b.cols() != 1) throw std::invalid_argument("solve_in_span expects a single column");
  return solve_columns_in_span(g, b);
}

Mat free_complement(const Mat& g) {
  const auto s = smith_normal_form(g, kTrackUinv);
  for (int e : s.exponents)
    if (e != 0) throw std::domain_error("free_complement: quotient has torsion");
  return s.Uinv.col_range(s.rank(), g.rows() - s.rank());
}

Mat span_basis(const Mat& g) {
  const auto s = smith_normal_form(g, kTrackUinv);
  Mat b = s.Uinv.col_range(0, s.rank());
  for (std::size_t j = 0; j < s.rank(); ++j) {
    if (s.exponents[j] == 0) continue;
    const RingElem f = pi_power(g.ring(), s.exponents[j]);
    for (std::size_t i = 0; i < b.rows(); ++i) b(i, j) = b(i, j) * f;
  }
  return b;
}

RelativeInvariants relative_invariants(const Mat& h, const Mat& g) {
  RelativeInvariants out;
  const Mat basis = span_basis(h);
  auto x = solve_columns_in_span(basis, g);
  if (!x) {
    out.contained = false;
    out.same_rank = false;
    return out;
  }
  const auto s = smith_normal_form(*x, 0);
  out.same_rank = s.rank() == basis.cols();
  for (int e : s.exponents)
    if (e != 0) out.exponents.push_back(e);
  return out;
}

namespace {

// Row echelon form over the fraction field; returns pivot count and the determinant sign/product.
std::pair<std::size_t, RingElem> eliminate(Mat a) {
  const GroundRing& r = a.ring();
  std::size_t row = 0;
  RingElem det = RingElem::one(r);
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) {
      det = RingElem::zero(r);
      continue;
    }
    if (p != row) {
      swap_rows(a, p, row);
      det = -det;
    }
    det = det * a(row, c);
    const RingElem inv = a(row, c).inverse();
    for (std::size_t i = row + 1; i < a.rows(); ++i) {
      if (a(i, c).is_zero()) continue;
      const RingElem f = a(i, c) * inv;
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
    }
    ++row;
  }
  return {row, det};
}

}  // namespace

std::size_t rank(const Mat& m) { return eliminate(m).first; }

Echelon reduced_echelon(const Mat& m) {
  Mat a = m;
  Echelon out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    swap_rows(a, p, row);
    const RingElem inv = a(row, c).inverse();
    for (std::size_t j = c; j < a.cols(); ++j)
      if (!a(row, j).is_zero()) a(row, j) = a(row, j) * inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, c).is_zero()) continue;
      const RingElem f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.R = a.row_range(0, row);
  return out;
}

Mat select_columns(const Mat& m, const std::vector<std::size_t>& cols) {
  Mat out(m.ring(), m.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, cols[j]);
  return out;
}

RingElem determinant(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (m.rows() == 0) return RingElem::one(m.ring());
  auto [rk, det] = eliminate(m);
  return rk == m.rows() ? det : RingElem::zero(m.ring());
}

Mat inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const GroundRing& r = m.ring();
  Mat a = Mat::hcat(m, Mat::identity(r, n));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw std::domain_error("inverse of a singular matrix");
    swap_rows(a, p, c);
    const RingElem inv = a(c, c).inverse();
    for (std::size_t j = 0; j < 2 * n; ++j) a(c, j) = a(c, j) * inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c).is_zero()) continue;
      const RingElem f = a(i, c);
      for (std::size_t j = 0; j < 2 * n; ++j)
        if (!a(c, j).is_zero()) a(i, j) -= f * a(c, j);
    }
  }
  return a.col_range(n, n);
}

bool is_invertible_over_ring(const Mat& m) {
  if (m.rows() != m.cols()) return false;
  if (!m.in_ring()) return false;
  const RingElem d = determinant(m);
  return m.ring().is_field() ? !d.is_zero() : d.is_unit();
}

}  // namespace xtilt
