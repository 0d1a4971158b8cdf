#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "mfres/forms.hpp"
#include "mfres/groebner.hpp"
#include "mfres/linalg.hpp"
#include "mfres/mf.hpp"

namespace mfres {

// Q / (df/dx_0, ..., df/dx_n) for a potential with an isolated critical point
// at the origin.
class MilnorAlgebra {
 public:
  // Throws DomainError if f(0) != 0, the singularity is not isolated, or the
  // Jacobian ideal has support away from the origin.
  explicit MilnorAlgebra(Polynomial potential, MonomialOrder order = {});

  const Polynomial& potential() const { return potential_; }
  const RingPtr& ring() const { return potential_.ring(); }
  const GroebnerBasis& jacobian_basis() const { return jacobian_gb_; }
  const FiniteQuotientBasis& basis() const { return basis_; }
  std::size_t milnor_number() const { return basis_.dimension(); }

  Polynomial reduce(const Polynomial& p) const;
  std::vector<Rational> coordinates(const Polynomial& p) const;
  // The standard monomials as polynomials, in basis order.
  std::vector<Polynomial> basis_polynomials() const;

 private:
  Polynomial potential_;
  GroebnerBasis jacobian_gb_;
  FiniteQuotientBasis basis_;
};

MilnorAlgebra milnor_algebra(const Polynomial& f, MonomialOrder order = {});

// Linear functional on the Milnor algebra, normalized by res(hess f) = mu.
class ResidueFunctional {
 public:
  // Throws DomainError if the Hessian class vanishes in the algebra.
  explicit ResidueFunctional(MilnorAlgebra algebra);

  const MilnorAlgebra& algebra() const { return algebra_; }
  // Values on the standard-monomial basis.
  const std::vector<Rational>& values() const { return values_; }
  Rational operator()(const Polynomial& p) const;

 private:
  MilnorAlgebra algebra_;
  std::vector<Rational> values_;
};

ResidueFunctional residue_functional(const MilnorAlgebra& algebra);

// res(coef(a) * coef(b)) for top-degree forms a, b.
Rational residue_pairing(const ResidueFunctional& rf, const DifferentialForm& a, const DifferentialForm& b);

// h_even - h_odd of the Hom complex.
long euler_pairing(const MatrixFactorization& left, const MatrixFactorization& right, MonomialOrder order = {});

// Class of the top coefficient of ch_PV in the Milnor algebra, as coordinates
// in the standard-monomial basis.
std::vector<Rational> chern_milnor_class(const MatrixFactorization& mf, const MilnorAlgebra& algebra);

struct HrrReport {
  long chi = 0;
  Rational residue_side;
  int sign = 1;
  bool equal = false;
};

// chi(left, right) against (-1)^{binom(n+1, 2)} Res_f(ch_PV(left), ch_PV(right)).
HrrReport hrr_check(const MatrixFactorization& left, const MatrixFactorization& right,
                    const ResidueFunctional& rf, MonomialOrder order = {});

// A module given either by a matrix factorization (coker A) or a presentation.
using ModuleSource = std::variant<MatrixFactorization, ModulePresentation>;

ModulePresentation as_presentation(const ModuleSource& m);
std::string source_label(const ModuleSource& m);

// Stable length Tor_{2i} - length Tor_{2i+1}.
long hochster_theta(const ModuleSource& m, const ModulePresentation& n_module, MonomialOrder order = {});
long hochster_theta(const ModuleSource& m, const ModuleSource& n_module, MonomialOrder order = {});

// dim Ext^2 - dim Ext^1 (stable), read off the Hom complex.
long herbrand_difference(const MatrixFactorization& m, const MatrixFactorization& m2, MonomialOrder order = {});

enum class PairingKind { euler, theta, signed_theta };

PairingKind parse_pairing_kind(const std::string& name);
std::string to_string(PairingKind kind);

struct GramMatrix {
  std::vector<std::string> labels;
  RationalMatrix entries;

  bool symmetric() const { return entries.is_symmetric(); }
};

// Full matrix of pairings. Entries are evaluated on up to `threads` worker
// threads; the result does not depend on the thread count.
GramMatrix gram_matrix(const std::vector<ModuleSource>& items, PairingKind pairing, MonomialOrder order = {},
                       unsigned threads = 1);

struct PsdReport {
  bool psd = false;
  std::size_t rank = 0;
  std::vector<std::vector<Rational>> kernel_basis;
};

// Exact LDL^T with largest-diagonal symmetric pivoting. Throws DomainError on
// an asymmetric matrix.
PsdReport is_positive_semidefinite(const GramMatrix& g);
PsdReport is_positive_semidefinite(const RationalMatrix& g);

// Bilinear extension to formal Z-combinations of the Gram items.
Rational pair_classes(const GramMatrix& g, const std::vector<long>& left, const std::vector<long>& right);

// Linear extension of chern_milnor_class.
std::vector<Rational> combine_classes(const std::vector<std::vector<Rational>>& classes,
                                      const std::vector<long>& coefficients);

}  // namespace mfres
