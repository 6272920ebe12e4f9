#include <sstream>
#include <stdexcept>

#include "xtilt/linalg.hpp"

namespace xtilt {

Mat::Mat(const GroundRing& r, std::size_t rows, std::size_t cols)
    : ring_(r), rows_(rows), cols_(cols), a_(rows * cols, RingElem::zero(r)) {}

Mat Mat::identity(const GroundRing& r, std::size_t n) {
  Mat m(r, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = RingElem::one(r);
  return m;
}

Mat Mat::column(const GroundRing& r, const std::vector<RingElem>& entries) {
  Mat m(r, entries.size(), 1);
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
  return m;
}

Mat Mat::from_rows(const GroundRing& r, const std::vector<std::vector<RingElem>>& rows) {
  const std::size_t nc = rows.empty() ? 0 : rows[0].size();
  Mat m(r, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::transpose() const {
  Mat t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("matrix block out of range");
  Mat b(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("matrix block out of range");
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Mat Mat::hcat(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("hcat: row mismatch");
  Mat m(a.ring_, a.rows_, a.cols_ + b.cols_);
  m.set_block(0, 0, a);
  m.set_block(0, a.cols_, b);
  return m;
}

Mat Mat::vcat(const Mat& a, const Mat& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("vcat: column mismatch");
  Mat m(a.ring_, a.rows_ + b.rows_, a.cols_);
  m.set_block(0, 0, a);
  m.set_block(a.rows_, 0, b);
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat::in_ring() const {
  for (const auto& x : a_)
    if (!x.in_ring()) return false;
  return true;
}

Mat Mat::scaled(const RingElem& s) const {
  Mat m = *this;
  for (auto& x : m.a_) x = x * s;
  return m;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                                std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                                std::to_string(b.cols_));
  if (a.ring_ != b.ring_) throw std::invalid_argument("matrix product ring mismatch");
  Mat m(a.ring_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const RingElem& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const RingElem& y = b(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

Mat operator+(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  Mat m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  return m;
}

Mat operator-(const Mat& a, const Mat& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference shape mismatch");
  Mat m = a;
  for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= b.a_[i];
  return m;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
  }
  os << "]";
  return os.str();
}

// ------------------------------------------------------- residue matrices

ResMat::ResMat(const GroundRing& r, std::size_t rows, std::size_t cols)
    : ring_(r), rows_(rows), cols_(cols), a_(rows * cols, ResidueElem::zero(r)) {}

ResMat ResMat::of(const Mat& m) {
  ResMat r(m.ring(), m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).residue();
  return r;
}

std::vector<std::size_t> ResMat::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
    std::size_t p = row;
    while (p < rows_ && (*this)(p, c).is_zero()) ++p;
    if (p == rows_) continue;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(row, j));
    const ResidueElem inv = (*this)(row, c).inverse();
    for (std::size_t j = 0; j < cols_; ++j) (*this)(row, j) = (*this)(row, j) * inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == row || (*this)(i, c).is_zero()) continue;
      const ResidueElem f = (*this)(i, c);
      for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = (*this)(i, j) - f * (*this)(row, j);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t ResMat::rank() const {
  ResMat copy = *this;
  return copy.rref().size();
}

ResMat ResMat::kernel() const {
  ResMat r = *this;
  const auto pivots = r.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free.push_back(c);
  ResMat k(ring_, cols_, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = ResidueElem::one(ring_);
    for (std::size_t i = 0; i < pivots.size(); ++i) k(pivots[i], f) = -r(i, free[f]);
  }
  return k;
}

Mat ResMat::lift() const {
  Mat m(ring_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).lift();
  return m;
}

}  // namespace xtilt
