#include "mfres/forms.hpp"

#include <bit>
#include <sstream>
#include <utility>

#include "mfres/error.hpp"

namespace mfres {

namespace {

constexpr std::size_t kMaxFormVariables = 32;

// Sign of dx_a ^ dx_b relative to dx_{a|b} for disjoint index sets.
int wedge_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
    unsigned j = static_cast<unsigned>(std::countr_zero(rest));
    std::uint32_t above = j + 1 >= 32 ? 0u : (a >> (j + 1));
    swaps += std::popcount(above);
  }
  return swaps % 2 == 0 ? 1 : -1;
}

Rational factorial(unsigned n) {
  Rational r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace

DifferentialForm::DifferentialForm(RingPtr ring, unsigned degree) : ring_(std::move(ring)), degree_(degree) {
  if (ring_ && ring_->size() > kMaxFormVariables) throw DomainError("forms support at most 32 variables");
}

DifferentialForm DifferentialForm::function(const Polynomial& p) {
  DifferentialForm f(p.ring(), 0);
  f.add_term(0, p);
  return f;
}

DifferentialForm DifferentialForm::differential(const RingPtr& ring, std::size_t index) {
  if (index >= ring->size()) throw DomainError("differential: variable index out of range");
  DifferentialForm f(ring, 1);
  f.add_term(std::uint32_t{1} << index, Polynomial::constant(ring, 1));
  return f;
}

DifferentialForm DifferentialForm::basis(const RingPtr& ring, const std::vector<std::size_t>& indices,
                                         const Polynomial& coefficient) {
  DifferentialForm acc = function(coefficient);
  for (std::size_t i : indices) acc = wedge(acc, differential(ring, i));
  return acc;
}

void DifferentialForm::add_term(std::uint32_t mask, const Polynomial& coef) {
  if (coef.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(mask, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial DifferentialForm::coefficient(std::uint32_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Polynomial::zero(ring_) : it->second;
}

Polynomial DifferentialForm::top_coefficient() const {
  const std::size_t n = ring_->size();
  if (degree_ != n) throw DomainError("top_coefficient: form is not of top degree");
  std::uint32_t mask = n == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1);
  return coefficient(mask);
}

DifferentialForm& DifferentialForm::operator+=(const DifferentialForm& other) {
  if (other.is_zero()) return *this;
  if (is_zero() && degree_ != other.degree_ && terms_.empty()) degree_ = other.degree_;
  if (degree_ != other.degree_) throw DomainError("adding forms of different degree");
  if (!ring_) ring_ = other.ring_;
  for (const auto& [mask, coef] : other.terms_) add_term(mask, coef);
  return *this;
}

DifferentialForm DifferentialForm::operator+(const DifferentialForm& other) const {
  DifferentialForm s = *this;
  s += other;
  return s;
}

DifferentialForm DifferentialForm::operator-() const {
  DifferentialForm s = *this;
  for (auto& kv : s.terms_) kv.second = -kv.second;
  return s;
}

DifferentialForm DifferentialForm::operator-(const DifferentialForm& other) const { return *this + (-other); }

DifferentialForm DifferentialForm::operator*(const Polynomial& p) const {
  DifferentialForm s(ring_, degree_);
  for (const auto& [mask, coef] : terms_) s.add_term(mask, coef * p);
  return s;
}

DifferentialForm DifferentialForm::operator*(const Rational& c) const {
  DifferentialForm s(ring_, degree_);
  for (const auto& [mask, coef] : terms_) s.add_term(mask, coef * c);
  return s;
}

std::string DifferentialForm::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [mask, coef] : terms_) {
    if (!first) out << " + ";
    first = false;
    if (mask == 0) {
      out << coef.to_string();
      continue;
    }
    out << "(" << coef.to_string() << ")";
    bool lead = true;
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      if (!(mask >> i & 1u)) continue;
      out << (lead ? "*" : "^") << "d" << ring_->name(i);
      lead = false;
    }
  }
  return out.str();
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
  if (a.ring() && b.ring() && !(*a.ring() == *b.ring())) throw DomainError("wedge: forms from different rings");
  DifferentialForm out(a.ring() ? a.ring() : b.ring(), a.degree() + b.degree());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      Polynomial c = ca * cb;
      out.add_term(ma | mb, wedge_sign(ma, mb) > 0 ? c : -c);
    }
  return out;
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
  DifferentialForm out(a.ring(), a.degree() + 1);
  if (!a.ring()) return out;
  const std::size_t n = a.ring()->size();
  for (const auto& [mask, coef] : a.terms())
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (mask & bit) continue;
      Polynomial c = differentiate(coef, i);
      if (c.is_zero()) continue;
      out.add_term(mask | bit, wedge_sign(bit, mask) > 0 ? c : -c);
    }
  return out;
}

// FormMatrix

FormMatrix::FormMatrix(RingPtr ring, std::size_t rows, std::size_t cols, unsigned degree)
    : ring_(ring), rows_(rows), cols_(cols), degree_(degree), entries_(rows * cols, DifferentialForm(ring, degree)) {}

FormMatrix FormMatrix::identity(const RingPtr& ring, std::size_t n) {
  FormMatrix m(ring, n, n, 0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = DifferentialForm::function(Polynomial::constant(ring, 1));
  return m;
}

FormMatrix FormMatrix::from_functions(const PolyMatrix& p) {
  FormMatrix m(p.ring(), p.rows(), p.cols(), 0);
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) m(i, j) = DifferentialForm::function(p(i, j));
  return m;
}

FormMatrix FormMatrix::differential(const PolyMatrix& p) {
  FormMatrix m(p.ring(), p.rows(), p.cols(), 1);
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j)
      m(i, j) = exterior_derivative(DifferentialForm::function(p(i, j)));
  return m;
}

FormMatrix FormMatrix::operator*(const FormMatrix& other) const {
  if (cols_ != other.rows_) throw DomainError("form matrix product shape mismatch");
  FormMatrix p(ring_ ? ring_ : other.ring_, rows_, other.cols_, degree_ + other.degree_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const DifferentialForm& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += wedge(a, other(k, j));
    }
  return p;
}

DifferentialForm FormMatrix::trace() const {
  if (rows_ != cols_) throw DomainError("trace of a non-square form matrix");
  DifferentialForm t(ring_, degree_);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

DifferentialForm matrix_form_product_trace(const std::vector<FormMatrix>& ms) {
  if (ms.empty()) throw DomainError("matrix_form_product_trace: empty product has no size; pass an identity");
  FormMatrix acc = ms.front();
  for (std::size_t k = 1; k < ms.size(); ++k) acc = acc * ms[k];
  return acc.trace();
}

namespace {

FormMatrix power(const FormMatrix& m, unsigned exponent, std::size_t size) {
  FormMatrix acc = FormMatrix::identity(m.ring(), size);
  for (unsigned k = 0; k < exponent; ++k) acc = acc * m;
  return acc;
}

}  // namespace

DifferentialForm chern_character_form(const MatrixFactorization& mf) {
  const std::size_t nvars = mf.ring()->size();
  if (nvars % 2 != 0)
    throw DomainError("chern_character_form: the number of variables (" + std::to_string(nvars) +
                      ") is odd, so the Chern character form is undefined");
  const unsigned p = static_cast<unsigned>(nvars / 2);
  FormMatrix dadb = FormMatrix::differential(mf.a()) * FormMatrix::differential(mf.b());
  DifferentialForm tr = power(dadb, p, mf.size()).trace();
  return tr * (Rational(2) / factorial(static_cast<unsigned>(nvars)));
}

EulerLemmaSides euler_lemma_sides(const MatrixFactorization& mf, unsigned j) {
  if (j == 0) throw DomainError("euler_lemma_check: j must be positive");
  if (2 * j > mf.ring()->size())
    throw DomainError("euler_lemma_check: 2j exceeds the number of variables");
  FormMatrix da = FormMatrix::differential(mf.a());
  FormMatrix db = FormMatrix::differential(mf.b());
  FormMatrix dadb = da * db;
  EulerLemmaSides sides;
  sides.lhs = power(dadb, j, mf.size()).trace() * mf.potential();
  FormMatrix inner = FormMatrix::from_functions(mf.a()) * db * power(dadb, j - 1, mf.size());
  DifferentialForm df = exterior_derivative(DifferentialForm::function(mf.potential()));
  sides.rhs = wedge(df, inner.trace()) * Rational(j);
  return sides;
}

bool euler_lemma_check(const MatrixFactorization& mf, unsigned j) {
  EulerLemmaSides s = euler_lemma_sides(mf, j);
  return s.lhs == s.rhs;
}

}  // namespace mfres
