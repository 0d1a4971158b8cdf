#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mfres/mf.hpp"
#include "mfres/polyring.hpp"

namespace mfres {

// Polynomial differential form of pure degree p on affine space:
// sum of g_I dx_I over strictly increasing index sets I, |I| = p.
// Index sets are stored as bitmasks (bit i = dx_i).
class DifferentialForm {
 public:
  using Terms = std::map<std::uint32_t, Polynomial>;

  DifferentialForm() = default;
  DifferentialForm(RingPtr ring, unsigned degree);

  static DifferentialForm function(const Polynomial& p);
  // dx_i
  static DifferentialForm differential(const RingPtr& ring, std::size_t index);
  // coefficient * dx_{i1} ^ ... ^ dx_{ip} for arbitrary (unsorted) indices.
  static DifferentialForm basis(const RingPtr& ring, const std::vector<std::size_t>& indices,
                                const Polynomial& coefficient);

  const RingPtr& ring() const { return ring_; }
  unsigned degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Polynomial coefficient(std::uint32_t mask) const;
  // Coefficient of dx_0 ^ ... ^ dx_n (requires degree == variable count).
  Polynomial top_coefficient() const;

  DifferentialForm operator+(const DifferentialForm& other) const;
  DifferentialForm operator-(const DifferentialForm& other) const;
  DifferentialForm operator-() const;
  DifferentialForm operator*(const Polynomial& p) const;
  DifferentialForm operator*(const Rational& c) const;
  DifferentialForm& operator+=(const DifferentialForm& other);

  friend bool operator==(const DifferentialForm& a, const DifferentialForm& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  std::string to_string() const;

 private:
  friend DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
  friend DifferentialForm exterior_derivative(const DifferentialForm& a);

  void add_term(std::uint32_t mask, const Polynomial& coef);

  RingPtr ring_;
  unsigned degree_ = 0;
  Terms terms_;
};

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm exterior_derivative(const DifferentialForm& a);

// Matrix whose entries are forms of one common degree.
class FormMatrix {
 public:
  FormMatrix() = default;
  FormMatrix(RingPtr ring, std::size_t rows, std::size_t cols, unsigned degree);

  static FormMatrix identity(const RingPtr& ring, std::size_t n);
  // Entries as 0-forms.
  static FormMatrix from_functions(const PolyMatrix& m);
  // Entrywise exterior derivative of a polynomial matrix.
  static FormMatrix differential(const PolyMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  unsigned degree() const { return degree_; }
  const RingPtr& ring() const { return ring_; }

  DifferentialForm& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const DifferentialForm& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  // Row-by-column product with entrywise wedge.
  FormMatrix operator*(const FormMatrix& other) const;
  DifferentialForm trace() const;

 private:
  RingPtr ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  unsigned degree_ = 0;
  std::vector<DifferentialForm> entries_;
};

// tr(M_1 M_2 ... M_k); the list must be non-empty and chain-compatible.
DifferentialForm matrix_form_product_trace(const std::vector<FormMatrix>& ms);

// 2 tr((dA dB)^p) / (n+1)!, p = (n+1)/2; requires an even number of variables.
DifferentialForm chern_character_form(const MatrixFactorization& mf);

struct EulerLemmaSides {
  DifferentialForm lhs;  // f tr((dA dB)^j)
  DifferentialForm rhs;  // j df ^ tr(A dB (dA dB)^{j-1})
};

EulerLemmaSides euler_lemma_sides(const MatrixFactorization& mf, unsigned j);
bool euler_lemma_check(const MatrixFactorization& mf, unsigned j);

}  // namespace mfres
