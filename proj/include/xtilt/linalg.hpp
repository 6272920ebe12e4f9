#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "xtilt/ring.hpp"

namespace xtilt {

/// Dense row-major matrix over a single ground ring (entries may lie in its fraction field).
class Mat {
 public:
  Mat() = default;
  Mat(const GroundRing& r, std::size_t rows, std::size_t cols);
  static Mat identity(const GroundRing& r, std::size_t n);
  /// Single column from a list of entries.
  static Mat column(const GroundRing& r, const std::vector<RingElem>& entries);
  static Mat from_rows(const GroundRing& r, const std::vector<std::vector<RingElem>>& rows);

  const GroundRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  const RingElem& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  RingElem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const std::vector<RingElem>& entries() const { return a_; }

  Mat transpose() const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Mat col_range(std::size_t c0, std::size_t nc) const { return block(0, c0, rows_, nc); }
  Mat row_range(std::size_t r0, std::size_t nr) const { return block(r0, 0, nr, cols_); }
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);
  static Mat hcat(const Mat& a, const Mat& b);
  static Mat vcat(const Mat& a, const Mat& b);

  bool is_zero() const;
  bool in_ring() const;
  Mat scaled(const RingElem& s) const;

  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  std::string to_string() const;

 private:
  GroundRing ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RingElem> a_;
};

/// U * M * V = diag(pi^exponents) padded with zeros; Uinv, Vinv are the inverses.
struct SmithDecomposition {
  Mat U, Uinv, V, Vinv;
  std::vector<int> exponents;
  std::size_t rank() const { return exponents.size(); }
};

inline constexpr unsigned kTrackU = 1, kTrackUinv = 2, kTrackV = 4, kTrackVinv = 8, kTrackAll = 15;

/// Smith normal form over a DVR (Gaussian elimination with all exponents 0 over a field).
/// Pivot: minimal valuation, then minimal (row, col). Transforms not named in
/// `track` are left empty.
SmithDecomposition smith_normal_form(const Mat& m, unsigned track = kTrackAll);

/// Basis (as columns) of the kernel of m; the quotient by it is free.
Mat kernel_saturated(const Mat& m);

struct Saturation {
  Mat S;                     // basis of the saturation of span(G)
  std::vector<int> exponents;  // nonzero invariant factors of span(S)/span(G)
};
Saturation saturation_with_invariants(const Mat& g);

/// x with g*x = b (b a single column) if b lies in the ring span of g's columns.
std::optional<Mat> solve_in_span(const Mat& g, const Mat& b);
/// Same for every column of b at once.
std::optional<Mat> solve_columns_in_span(const Mat& g, const Mat& b);

/// Columns completing a basis of span(g) to a basis of the ambient module.
/// Throws std::domain_error if the quotient has torsion.
Mat free_complement(const Mat& g);

/// Basis of the ring span of g's columns.
Mat span_basis(const Mat& g);

/// Invariants of span(h)/span(g) for span(g) inside span(h).
struct RelativeInvariants {
  bool contained = true;   // span(g) inside span(h)
  bool same_rank = true;   // quotient is torsion
  std::vector<int> exponents;
};
RelativeInvariants relative_invariants(const Mat& h, const Mat& g);

/// Rank over the fraction field.
std::size_t rank(const Mat& m);
struct Echelon {
  Mat R;                            // nonzero rows of the reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot columns
};
/// Reduced row echelon form over the fraction field: m = m[:, pivots] * R.
Echelon reduced_echelon(const Mat& m);
Mat select_columns(const Mat& m, const std::vector<std::size_t>& cols);
RingElem determinant(const Mat& m);
/// Inverse over the fraction field; throws std::domain_error if singular.
Mat inverse(const Mat& m);
/// True when m is square with a unit determinant (invertible over the ring).
bool is_invertible_over_ring(const Mat& m);

/// Matrix over the residue field.
class ResMat {
 public:
  ResMat() = default;
  ResMat(const GroundRing& r, std::size_t rows, std::size_t cols);
  static ResMat of(const Mat& m);
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const ResidueElem& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  ResidueElem& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const GroundRing& ring() const { return ring_; }

  /// Reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  /// Kernel basis as columns, one per non-pivot column.
  ResMat kernel() const;
  /// Lifts every entry to the ring.
  Mat lift() const;

 private:
  GroundRing ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<ResidueElem> a_;
};

}  // namespace xtilt
