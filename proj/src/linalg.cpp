#include "mfres/linalg.hpp"

#include <sstream>
#include <utility>

#include "mfres/error.hpp"

namespace mfres {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw DomainError("matrix entry count does not match shape");
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DomainError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix RationalMatrix::from_columns(std::size_t rows,
                                            const std::vector<std::vector<Rational>>& cols) {
  RationalMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw DomainError("column length does not match row count");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

std::vector<Rational> RationalMatrix::column(std::size_t c) const {
  std::vector<Rational> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

std::vector<Rational> RationalMatrix::row(std::size_t r) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw DomainError("matrix product shape mismatch");
  RationalMatrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
    }
  return p;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DomainError("matrix sum shape mismatch");
  RationalMatrix s = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) s.entries_[i] += other.entries_[i];
  return s;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DomainError("matrix difference shape mismatch");
  RationalMatrix s = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) s.entries_[i] -= other.entries_[i];
  return s;
}

std::vector<Rational> RationalMatrix::operator*(const std::vector<Rational>& v) const {
  if (v.size() != cols_) throw DomainError("matrix-vector shape mismatch");
  std::vector<Rational> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

RationalMatrix RationalMatrix::pow(unsigned exponent) const {
  if (!is_square()) throw DomainError("power of a non-square matrix");
  RationalMatrix result = identity(rows_);
  RationalMatrix base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

bool RationalMatrix::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

bool RationalMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RationalMatrix RationalMatrix::hconcat(const RationalMatrix& other) const {
  if (rows_ != other.rows_) throw DomainError("hconcat row mismatch");
  RationalMatrix m(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
  }
  return m;
}

RationalMatrix RationalMatrix::column_range(std::size_t begin, std::size_t end) const {
  RationalMatrix m(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
  return m;
}

RationalMatrix RationalMatrix::rref(std::vector<std::size_t>* pivots) const {
  RationalMatrix m = *this;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < cols_ && lead_row < rows_; ++c) {
    std::size_t p = lead_row;
    while (p < rows_ && m(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != lead_row)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m(p, j), m(lead_row, j));
    Rational inv = 1 / m(lead_row, c);
    for (std::size_t j = c; j < cols_; ++j) m(lead_row, j) *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == lead_row || m(i, c) == 0) continue;
      Rational factor = m(i, c);
      for (std::size_t j = c; j < cols_; ++j) m(i, j) -= factor * m(lead_row, j);
    }
    if (pivots) pivots->push_back(c);
    ++lead_row;
  }
  return m;
}

std::size_t RationalMatrix::rank() const {
  std::vector<std::size_t> pivots;
  rref(&pivots);
  return pivots.size();
}

RationalMatrix RationalMatrix::nullspace() const {
  std::vector<std::size_t> pivots;
  RationalMatrix r = rref(&pivots);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols_);
    v[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return from_columns(cols_, basis);
}

std::string RationalMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << (*this)(i, j).get_str();
    out << "]";
  }
  out << "]";
  return out.str();
}

// Subspace

Subspace::Subspace(const RationalMatrix& spanning) : ambient_(spanning.rows()) {
  std::vector<std::size_t> pivots;
  RationalMatrix r = spanning.transpose().rref(&pivots);
  basis_ = RationalMatrix(ambient_, pivots.size());
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (std::size_t i = 0; i < ambient_; ++i) basis_(i, k) = r(k, i);
}

Subspace Subspace::zero(std::size_t ambient) { return Subspace(RationalMatrix(ambient, 0)); }

Subspace Subspace::full(std::size_t ambient) { return Subspace(RationalMatrix::identity(ambient)); }

Subspace Subspace::kernel(const RationalMatrix& map) { return Subspace(map.nullspace()); }

Subspace Subspace::image(const RationalMatrix& map) { return Subspace(map); }

bool Subspace::contains(const std::vector<Rational>& v) const {
  if (v.size() != ambient_) throw DomainError("vector does not live in the subspace's ambient space");
  RationalMatrix extended = basis_.hconcat(RationalMatrix::from_columns(ambient_, {v}));
  return extended.rank() == dim();
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DomainError("subspaces of different ambient spaces");
  if (other.dim() == 0) return true;
  return basis_.hconcat(other.basis_).rank() == dim();
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DomainError("subspaces of different ambient spaces");
  return Subspace(basis_.hconcat(other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_) throw DomainError("subspaces of different ambient spaces");
  if (dim() == 0 || other.dim() == 0) return zero(ambient_);
  // u = U a = W b  <=>  [U | -W] (a, b) = 0
  RationalMatrix neg_w = other.basis_;
  for (std::size_t i = 0; i < neg_w.rows(); ++i)
    for (std::size_t j = 0; j < neg_w.cols(); ++j) neg_w(i, j) = -neg_w(i, j);
  RationalMatrix null = basis_.hconcat(neg_w).nullspace();
  RationalMatrix coeffs(dim(), null.cols());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < null.cols(); ++j) coeffs(i, j) = null(i, j);
  return Subspace(basis_ * coeffs);
}

Subspace Subspace::image_under(const RationalMatrix& map) const {
  if (map.cols() != ambient_) throw DomainError("map domain does not match subspace ambient space");
  return Subspace(map * basis_);
}

Subspace Subspace::preimage_under(const RationalMatrix& map) const {
  if (map.rows() != ambient_) throw DomainError("map codomain does not match subspace ambient space");
  // v with map v = S c  <=>  [map | -S] (v, c) = 0
  RationalMatrix neg_s = basis_;
  for (std::size_t i = 0; i < neg_s.rows(); ++i)
    for (std::size_t j = 0; j < neg_s.cols(); ++j) neg_s(i, j) = -neg_s(i, j);
  RationalMatrix null = map.hconcat(neg_s).nullspace();
  RationalMatrix v_part(map.cols(), null.cols());
  for (std::size_t i = 0; i < map.cols(); ++i)
    for (std::size_t j = 0; j < null.cols(); ++j) v_part(i, j) = null(i, j);
  return Subspace(v_part);
}

RationalMatrix Subspace::complement_of(const Subspace& smaller) const {
  if (!contains(smaller)) throw DomainError("complement_of: argument is not a subspace");
  RationalMatrix current = smaller.basis_;
  std::size_t rank = smaller.dim();
  std::vector<std::vector<Rational>> extra;
  for (std::size_t j = 0; j < dim(); ++j) {
    RationalMatrix trial = current.hconcat(basis_.column_range(j, j + 1));
    if (trial.rank() > rank) {
      current = std::move(trial);
      ++rank;
      extra.push_back(basis_.column(j));
    }
  }
  return RationalMatrix::from_columns(ambient_, extra);
}

}  // namespace mfres
