#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mfres/rational.hpp"

namespace mfres {

// An ordered list of variable names x_0, ..., x_n. Rings compare equal when
// their name lists do.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names);

// Dense exponent vector, one entry per ring variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1);

  std::size_t size() const { return exps_.size(); }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  unsigned& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<unsigned>& exponents() const { return exps_; }

  unsigned degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  // Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::vector<unsigned> exps_;
};

enum class OrderKind { degrevlex, lex };

// Term order on monomials. Returns <0, 0, >0.
int compare_monomials(OrderKind kind, const Monomial& a, const Monomial& b);

// Canonical storage order for polynomial terms: degrevlex, largest first.
struct DegRevLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return compare_monomials(OrderKind::degrevlex, a, b) > 0;
  }
};

// Immutable-by-convention multivariate polynomial over Q. No zero coefficient
// is ever stored, so structural equality is mathematical equality.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, DegRevLexGreater>;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  Polynomial(RingPtr ring, Terms terms);

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c);

  const RingPtr& ring() const { return ring_; }
  std::size_t nvars() const { return ring_ ? ring_->size() : 0; }
  const Terms& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  // Maximum total degree of a term; 0 for the zero polynomial.
  unsigned total_degree() const;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial pow(unsigned exponent) const;
  // Multiply by c * m.
  Polynomial mul_term(const Monomial& m, const Rational& c) const;

  // Same polynomial in `target`, where variable i of this ring becomes
  // variable perm[i] of the target.
  Polynomial relabel(const RingPtr& target, const std::vector<std::size_t>& perm) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  void check_ring(const Polynomial& other) const;

  RingPtr ring_;
  Terms terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

// Grammar: rational literals, identifiers, + - * ^, parentheses. Implicit
// multiplication is rejected. Throws ParseError carrying the byte offset.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

Polynomial differentiate(const Polynomial& p, std::size_t variable_index);

// [df/dx_0, ..., df/dx_n]
std::vector<Polynomial> jacobian_generators(const Polynomial& f);

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols, std::vector<Polynomial> entries);

  static PolyMatrix identity(RingPtr ring, std::size_t n);
  static PolyMatrix scalar(const Polynomial& p, std::size_t n);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Polynomial& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  const std::vector<Polynomial>& entries() const { return entries_; }
  std::vector<Polynomial> column(std::size_t c) const;

  PolyMatrix operator*(const PolyMatrix& other) const;
  PolyMatrix operator+(const PolyMatrix& other) const;
  PolyMatrix operator-(const PolyMatrix& other) const;
  PolyMatrix operator*(const Polynomial& p) const;
  PolyMatrix transpose() const;
  bool is_zero() const;

  // Cofactor expansion; exact.
  Polynomial determinant() const;
  PolyMatrix adjugate() const;
  PolyMatrix minor_matrix(std::size_t skip_row, std::size_t skip_col) const;

  PolyMatrix relabel(const RingPtr& target, const std::vector<std::size_t>& perm) const;

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> entries_;
};

PolyMatrix hessian_matrix(const Polynomial& f);
Polynomial hessian_determinant(const Polynomial& f);

}  // namespace mfres
