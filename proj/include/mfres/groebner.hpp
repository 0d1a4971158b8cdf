#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mfres/linalg.hpp"
#include "mfres/polyring.hpp"

namespace mfres {

// Element of the free module Q^r.
class FreeModuleElement {
 public:
  FreeModuleElement() = default;
  FreeModuleElement(RingPtr ring, std::size_t rank);
  explicit FreeModuleElement(std::vector<Polynomial> components);

  static FreeModuleElement unit(RingPtr ring, std::size_t rank, std::size_t index);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return components_.size(); }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  Polynomial& operator[](std::size_t i) { return components_[i]; }
  const std::vector<Polynomial>& components() const { return components_; }

  bool is_zero() const;

  FreeModuleElement operator+(const FreeModuleElement& other) const;
  FreeModuleElement operator-(const FreeModuleElement& other) const;
  FreeModuleElement operator*(const Polynomial& p) const;

  friend bool operator==(const FreeModuleElement& a, const FreeModuleElement& b) {
    return a.components_ == b.components_;
  }

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Polynomial> components_;
};

// Term order on component-tagged monomials: position over term, where a
// lower component index has higher priority, then `kind` on monomials.
struct MonomialOrder {
  OrderKind kind = OrderKind::degrevlex;

  int compare(std::size_t comp_a, const Monomial& a, std::size_t comp_b, const Monomial& b) const {
    if (comp_a != comp_b) return comp_a < comp_b ? 1 : -1;
    return compare_monomials(kind, a, b);
  }
};

namespace detail {

struct ModuleTerm {
  std::size_t comp;
  Monomial mono;
  Rational coef;
};

// Terms sorted strictly decreasing in the module order; no zero coefficients.
using TermVector = std::vector<ModuleTerm>;

}  // namespace detail

// Reduced Groebner basis of a submodule of Q^r.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, std::size_t rank, MonomialOrder order,
                std::vector<detail::TermVector> elements);

  const RingPtr& ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const MonomialOrder& order() const { return order_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }

  std::vector<FreeModuleElement> generators() const;
  const std::vector<detail::TermVector>& elements() const { return elements_; }

 private:
  RingPtr ring_;
  std::size_t rank_;
  MonomialOrder order_;
  std::vector<detail::TermVector> elements_;
};

GroebnerBasis groebner_basis(const RingPtr& ring, std::size_t rank,
                             const std::vector<FreeModuleElement>& generators,
                             MonomialOrder order = {});

// Groebner basis of an ideal of Q (rank 1).
GroebnerBasis ideal_basis(const RingPtr& ring, const std::vector<Polynomial>& generators,
                          MonomialOrder order = {});

FreeModuleElement normal_form(const FreeModuleElement& v, const GroebnerBasis& gb);
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);

bool contains(const GroebnerBasis& gb, const FreeModuleElement& v);

// Generators of the kernel of Q^k -> Q^r, e_i -> generators[i]. Each returned
// element has rank k. Empty input yields an empty list.
std::vector<FreeModuleElement> syzygy_basis(const std::vector<FreeModuleElement>& generators,
                                            MonomialOrder order = {});

struct StandardMonomial {
  std::size_t component;
  Monomial monomial;

  friend bool operator==(const StandardMonomial&, const StandardMonomial&) = default;
};

// Monomials outside the leading-term module, listed by component and then in
// increasing term order.
struct FiniteQuotientBasis {
  std::vector<StandardMonomial> standard_monomials;

  std::size_t dimension() const { return standard_monomials.size(); }
  std::optional<std::size_t> index_of(const StandardMonomial& m) const;
};

// std::nullopt means the quotient Q^r / <gb> is infinite-dimensional.
std::optional<FiniteQuotientBasis> quotient_dimension(const GroebnerBasis& gb);

// Coordinates of the class of v in the standard-monomial basis.
std::vector<Rational> quotient_coordinates(const GroebnerBasis& gb, const FiniteQuotientBasis& basis,
                                           const FreeModuleElement& v);

// Matrix of multiplication by p on the finite quotient Q^r / <gb>.
RationalMatrix multiplication_matrix(const GroebnerBasis& gb, const FiniteQuotientBasis& basis,
                                     const Polynomial& p);

// dim_Q of K / I where K and I are the submodules spanned by the two lists.
// Throws DomainError when I is not contained in K and InfiniteQuotientError
// when K / I is not finite-dimensional.
std::size_t subquotient_dimension(const std::vector<FreeModuleElement>& kernel_generators,
                                  const std::vector<FreeModuleElement>& image_generators,
                                  MonomialOrder order = {});

// True iff every variable acts nilpotently on Q / <gb>, i.e. the ideal is
// supported only at the origin. Requires an ideal with finite quotient.
bool origin_support_check(const GroebnerBasis& gb);

}  // namespace mfres
