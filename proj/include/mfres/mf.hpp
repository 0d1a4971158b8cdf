#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mfres/error.hpp"
#include "mfres/groebner.hpp"
#include "mfres/polyring.hpp"

namespace mfres {

// Raised by validate_mf. Row and column are 1-based; zero when the failure is
// a shape problem rather than a specific entry.
class InvalidFactorizationError : public DomainError {
 public:
  InvalidFactorizationError(const std::string& label, const std::string& detail, std::size_t row = 0,
                            std::size_t col = 0);

  const std::string& label() const { return label_; }
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::string label_;
  std::size_t row_;
  std::size_t col_;
};

// Unchecked data for a matrix factorization.
struct FactorizationData {
  Polynomial potential;
  PolyMatrix a;
  PolyMatrix b;
  std::string label;
};

// A pair (A, B) of r x r matrices with AB = BA = f I. Instances only exist
// after validation. Convention: A is the odd differential P1 -> P0 and B the
// even one P0 -> P1, so the module represented is coker(A).
class MatrixFactorization {
 public:
  const Polynomial& potential() const { return potential_; }
  const PolyMatrix& a() const { return a_; }
  const PolyMatrix& b() const { return b_; }
  const std::string& label() const { return label_; }
  const RingPtr& ring() const { return potential_.ring(); }
  std::size_t size() const { return a_.rows(); }

  MatrixFactorization with_label(std::string label) const;

  // Same matrices and potential; labels are ignored.
  friend bool operator==(const MatrixFactorization& x, const MatrixFactorization& y) {
    return x.potential_ == y.potential_ && x.a_ == y.a_ && x.b_ == y.b_;
  }

 private:
  friend MatrixFactorization validate_mf(FactorizationData candidate);

  MatrixFactorization(Polynomial potential, PolyMatrix a, PolyMatrix b, std::string label)
      : potential_(std::move(potential)), a_(std::move(a)), b_(std::move(b)), label_(std::move(label)) {}

  Polynomial potential_;
  PolyMatrix a_;
  PolyMatrix b_;
  std::string label_;
};

// Checks shapes and AB = BA = f I exactly. Throws InvalidFactorizationError
// naming the first offending entry.
MatrixFactorization validate_mf(FactorizationData candidate);

// (A, B) -> (B, A)
MatrixFactorization shift(const MatrixFactorization& mf);
// (A, B) -> (A^T, B^T); coker(A^T) presents the R-dual of coker(A).
MatrixFactorization dual(const MatrixFactorization& mf);
// Block-diagonal sum.
MatrixFactorization direct_sum(const MatrixFactorization& x, const MatrixFactorization& y);
// The factorization (1, f) of rank one; zero in the stable category.
MatrixFactorization trivial_factorization(const Polynomial& f);
// Rename variables: variable i of the source ring becomes variable perm[i] of
// `target`.
MatrixFactorization relabel(const MatrixFactorization& mf, const RingPtr& target,
                            const std::vector<std::size_t>& perm);

// Z/2-graded complex of free Q-modules. d_even_to_odd is rank_odd x
// rank_even, d_odd_to_even is rank_even x rank_odd.
struct TwoPeriodicComplex {
  std::size_t rank_even = 0;
  std::size_t rank_odd = 0;
  PolyMatrix d_even_to_odd;
  PolyMatrix d_odd_to_even;
};

// Hom complex for the differential D(a) = d' a - (-1)^{|a|} a d. The even term
// is Hom(P0, P0') + Hom(P1, P1'), the odd term Hom(P1, P0') + Hom(P0, P1');
// each r' x r block is flattened row-major.
TwoPeriodicComplex hom_complex(const MatrixFactorization& left, const MatrixFactorization& right);

struct HomologyDimensions {
  std::size_t even = 0;
  std::size_t odd = 0;

  friend bool operator==(const HomologyDimensions&, const HomologyDimensions&) = default;
};

HomologyDimensions homology_dimensions(const TwoPeriodicComplex& complex, MonomialOrder order = {});

enum class PresentationBase { Q, R };

// Module coker(Q^m -> Q^rank) given by relation columns. Over R the relations
// f e_i are implicit.
struct ModulePresentation {
  Polynomial potential;
  std::size_t rank = 0;
  std::vector<FreeModuleElement> relations;
  PresentationBase over = PresentationBase::R;
  std::string label;

  const RingPtr& ring() const { return potential.ring(); }
  // Relations as an R-module: the stored ones plus f e_i.
  std::vector<FreeModuleElement> relations_with_potential() const;
};

// coker(A) over R.
ModulePresentation cokernel_presentation(const MatrixFactorization& mf);

struct TorLengths {
  std::size_t even = 0;
  std::size_t odd = 0;

  friend bool operator==(const TorLengths&, const TorLengths&) = default;
};

// Stable lengths of Tor_{2i}, Tor_{2i+1} (i >> 0) of coker(A) against the
// R-module n_module, via the periodic resolution ... -> R^r -B-> R^r -A-> R^r.
TorLengths tor_lengths(const MatrixFactorization& mf, const ModulePresentation& n_module, MonomialOrder order = {});

// Result of resolving an arbitrary R-module until the resolution becomes
// 2-periodic. When `factorization` is empty the module has finite projective
// dimension over R and all stable Tor/Ext vanish. Otherwise the
// `syzygy_index`-th syzygy of the module is coker(factorization.a()).
struct StabilizedModule {
  std::optional<MatrixFactorization> factorization;
  std::size_t syzygy_index = 0;
};

StabilizedModule stabilize(const ModulePresentation& module, MonomialOrder order = {}, std::size_t max_steps = 12);

}  // namespace mfres
