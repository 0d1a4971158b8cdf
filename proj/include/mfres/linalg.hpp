#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mfres/rational.hpp"

namespace mfres {

// Dense matrix over Q, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static RationalMatrix from_columns(std::size_t rows, const std::vector<std::vector<Rational>>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::vector<Rational> column(std::size_t c) const;
  std::vector<Rational> row(std::size_t r) const;

  RationalMatrix transpose() const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix operator+(const RationalMatrix& other) const;
  RationalMatrix operator-(const RationalMatrix& other) const;
  std::vector<Rational> operator*(const std::vector<Rational>& v) const;
  RationalMatrix pow(unsigned exponent) const;

  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;

  // Horizontal concatenation [this | other].
  RationalMatrix hconcat(const RationalMatrix& other) const;
  // Columns [begin, end).
  RationalMatrix column_range(std::size_t begin, std::size_t end) const;

  // Reduced row echelon form; pivot columns are appended to `pivots` when
  // non-null.
  RationalMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  std::size_t rank() const;
  // Basis of the right null space, one column per free variable, each
  // normalized so its free coordinate is 1.
  RationalMatrix nullspace() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

// A linear subspace of Q^d stored as the reduced column echelon basis, so two
// equal subspaces have identical representations.
class Subspace {
 public:
  Subspace() = default;
  // Span of the columns of `spanning` (which need not be independent).
  explicit Subspace(const RationalMatrix& spanning);

  static Subspace zero(std::size_t ambient);
  static Subspace full(std::size_t ambient);
  static Subspace kernel(const RationalMatrix& map);
  static Subspace image(const RationalMatrix& map);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.cols(); }
  const RationalMatrix& basis() const { return basis_; }

  bool contains(const std::vector<Rational>& v) const;
  bool contains(const Subspace& other) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  // {map * v : v in this}
  Subspace image_under(const RationalMatrix& map) const;
  // {v : map * v in this}
  Subspace preimage_under(const RationalMatrix& map) const;
  // Columns extending a basis of `smaller` (contained in this) to a basis of
  // this subspace.
  RationalMatrix complement_of(const Subspace& smaller) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  RationalMatrix basis_;
};

}  // namespace mfres
