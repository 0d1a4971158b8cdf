#include "mfres/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

#include "mfres/error.hpp"

namespace mfres {

// Ring

Ring::Ring(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const std::string& n = names_[i];
    bool ok = !n.empty() && (std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_');
    for (char c : n) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) throw ParseError("invalid variable name '" + n + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[j] == n) throw ParseError("duplicate variable name '" + n + "'");
  }
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

// Monomial

Monomial Monomial::variable(std::size_t nvars, std::size_t index, unsigned power) {
  Monomial m(nvars);
  m.exps_.at(index) = power;
  return m;
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (auto e : exps_) d += e;
  return d;
}

bool Monomial::is_one() const {
  return std::all_of(exps_.begin(), exps_.end(), [](unsigned e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial m = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) m.exps_[i] += other.exps_[i];
  return m;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial m = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) m.exps_[i] -= divisor.exps_[i];
  return m;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial m = *this;
  for (std::size_t i = 0; i < exps_.size(); ++i) m.exps_[i] = std::max(m.exps_[i], other.exps_[i]);
  return m;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

int compare_monomials(OrderKind kind, const Monomial& a, const Monomial& b) {
  const std::size_t n = a.size();
  if (kind == OrderKind::degrevlex) {
    unsigned da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = n; i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

// Polynomial

Polynomial::Polynomial(RingPtr ring, Terms terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(ring);
  if (c != 0) p.terms_.emplace(Monomial(ring->size()), c);
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->size()) throw DomainError("variable index out of range");
  Polynomial p(ring);
  p.terms_.emplace(Monomial::variable(ring->size(), index), Rational(1));
  return p;
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
  Polynomial p(ring);
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_term() const {
  if (terms_.empty()) return 0;
  // The constant monomial is the smallest in degrevlex, hence last.
  const auto& last = *terms_.rbegin();
  return last.first.is_one() ? last.second : Rational(0);
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

void Polynomial::check_ring(const Polynomial& other) const {
  if (ring_ && other.ring_ && ring_ != other.ring_ && !(*ring_ == *other.ring_))
    throw DomainError("polynomials from different rings");
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& kv : p.terms_) kv.second = -kv.second;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_ring(other);
  if (!ring_) ring_ = other.ring_;
  for (const auto& [m, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_ring(other);
  if (!ring_) ring_ = other.ring_;
  for (const auto& [m, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial p = *this;
  p += other;
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial p = *this;
  p -= other;
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  check_ring(other);
  Polynomial p(ring_ ? ring_ : other.ring_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      Monomial m = ma * mb;
      auto [it, inserted] = p.terms_.try_emplace(std::move(m), ca * cb);
      if (!inserted) {
        it->second += ca * cb;
        if (it->second == 0) p.terms_.erase(it);
      }
    }
  }
  return p;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  if (c == 0) return Polynomial(ring_);
  Polynomial p = *this;
  for (auto& kv : p.terms_) kv.second *= c;
  return p;
}

Polynomial Polynomial::mul_term(const Monomial& m, const Rational& c) const {
  Polynomial p(ring_);
  if (c == 0) return p;
  for (const auto& [mono, coef] : terms_) p.terms_.emplace_hint(p.terms_.end(), mono * m, coef * c);
  return p;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::relabel(const RingPtr& target, const std::vector<std::size_t>& perm) const {
  if (perm.size() != nvars() || target->size() != nvars())
    throw DomainError("relabel: permutation size does not match ring");
  Polynomial p(target);
  for (const auto& [m, c] : terms_) {
    Monomial moved(target->size());
    for (std::size_t i = 0; i < m.size(); ++i) moved[perm[i]] = m[i];
    p.terms_.emplace(std::move(moved), c);
  }
  return p;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.ring_ && b.ring_ && a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_)) return false;
  return a.terms_ == b.terms_;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (mag != 1 || m.is_one()) {
      out << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) out << "*";
      out << ring_->name(i);
      if (m[i] > 1) out << "^" << m[i];
      wrote = true;
    }
  }
  return out.str();
}

// Parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty polynomial expression", pos_);
    Polynomial p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(unexpected(), pos_);
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string unexpected() const {
    if (pos_ >= text_.size()) return "unexpected end of input";
    return std::string("unexpected character '") + text_[pos_] + "'";
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        acc += term();
      } else if (c == '-') {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(') {
        throw ParseError("implicit multiplication is not allowed", pos_);
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return -unary();
    }
    if (c == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) throw ParseError("expected a non-negative integer exponent", start);
      std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 6) throw ParseError("exponent too large", start);
      base = base.pow(static_cast<unsigned>(std::stoul(digits)));
      if (peek() == '^') throw ParseError("chained exponents are ambiguous; use parentheses", pos_);
    }
    return base;
  }

  Polynomial atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (peek() != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t den_start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (den_start == pos_) throw ParseError("expected denominator digits", pos_);
      }
      Rational q = parse_rational(text_.substr(start, pos_ - start));
      return Polynomial::constant(ring_, q);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string_view name = text_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) throw ParseError("unknown variable '" + std::string(name) + "'", start);
      return Polynomial::variable(ring_, *idx);
    }
    throw ParseError(unexpected(), pos_);
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return PolyParser(text, ring).parse();
}

Polynomial differentiate(const Polynomial& p, std::size_t variable_index) {
  if (variable_index >= p.nvars()) throw DomainError("differentiate: variable index out of range");
  Polynomial::Terms out;
  for (const auto& [m, c] : p.terms()) {
    unsigned e = m[variable_index];
    if (e == 0) continue;
    Monomial dm = m;
    dm[variable_index] = e - 1;
    out.emplace(std::move(dm), c * e);
  }
  return Polynomial(p.ring(), std::move(out));
}

std::vector<Polynomial> jacobian_generators(const Polynomial& f) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < f.nvars(); ++i) gens.push_back(differentiate(f, i));
  return gens;
}

// PolyMatrix

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols, Polynomial::zero(ring)) {}

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols, std::vector<Polynomial> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw DomainError("matrix entry count does not match shape");
}

PolyMatrix PolyMatrix::identity(RingPtr ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Polynomial::constant(ring, 1);
  return m;
}

PolyMatrix PolyMatrix::scalar(const Polynomial& p, std::size_t n) {
  PolyMatrix m(p.ring(), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = p;
  return m;
}

std::vector<Polynomial> PolyMatrix::column(std::size_t c) const {
  std::vector<Polynomial> v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, c));
  return v;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
  if (cols_ != other.rows_) throw DomainError("matrix product shape mismatch");
  PolyMatrix p(ring_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Polynomial& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += a * other(k, j);
    }
  return p;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DomainError("matrix sum shape mismatch");
  PolyMatrix s = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) s.entries_[i] += other.entries_[i];
  return s;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DomainError("matrix difference shape mismatch");
  PolyMatrix s = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) s.entries_[i] -= other.entries_[i];
  return s;
}

PolyMatrix PolyMatrix::operator*(const Polynomial& p) const {
  PolyMatrix s = *this;
  for (auto& e : s.entries_) e = e * p;
  return s;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

PolyMatrix PolyMatrix::minor_matrix(std::size_t skip_row, std::size_t skip_col) const {
  PolyMatrix m(ring_, rows_ - 1, cols_ - 1);
  for (std::size_t i = 0, mi = 0; i < rows_; ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0, mj = 0; j < cols_; ++j) {
      if (j == skip_col) continue;
      m(mi, mj++) = (*this)(i, j);
    }
    ++mi;
  }
  return m;
}

Polynomial PolyMatrix::determinant() const {
  if (!is_square()) throw DomainError("determinant of a non-square matrix");
  if (rows_ == 0) return Polynomial::constant(ring_, 1);
  if (rows_ == 1) return entries_[0];
  if (rows_ == 2) return (*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0);
  Polynomial det = Polynomial::zero(ring_);
  for (std::size_t j = 0; j < cols_; ++j) {
    const Polynomial& a = (*this)(0, j);
    if (a.is_zero()) continue;
    Polynomial term = a * minor_matrix(0, j).determinant();
    if (j % 2 == 0)
      det += term;
    else
      det -= term;
  }
  return det;
}

PolyMatrix PolyMatrix::adjugate() const {
  if (!is_square()) throw DomainError("adjugate of a non-square matrix");
  PolyMatrix adj(ring_, rows_, cols_);
  if (rows_ == 1) {
    adj(0, 0) = Polynomial::constant(ring_, 1);
    return adj;
  }
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      Polynomial cof = minor_matrix(i, j).determinant();
      adj(j, i) = (i + j) % 2 == 0 ? cof : -cof;
    }
  return adj;
}

PolyMatrix PolyMatrix::relabel(const RingPtr& target, const std::vector<std::size_t>& perm) const {
  PolyMatrix m(target, rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = entries_[i].relabel(target, perm);
  return m;
}

std::string PolyMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << (*this)(i, j).to_string();
    out << "]";
  }
  out << "]";
  return out.str();
}

PolyMatrix hessian_matrix(const Polynomial& f) {
  const std::size_t n = f.nvars();
  PolyMatrix h(f.ring(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial fi = differentiate(f, i);
    for (std::size_t j = 0; j < n; ++j) h(i, j) = differentiate(fi, j);
  }
  return h;
}

Polynomial hessian_determinant(const Polynomial& f) { return hessian_matrix(f).determinant(); }

}  // namespace mfres
