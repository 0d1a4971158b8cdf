#pragma once

#include <cstddef>
#include <vector>

#include "mfres/linalg.hpp"

namespace mfres {

// Square rational N with N^{m+1} = 0 for the given center m.
class NilpotentOperator {
 public:
  // Throws DomainError if N is not square or N^{center+1} != 0.
  NilpotentOperator(RationalMatrix matrix, unsigned center);

  std::size_t dimension() const { return matrix_.rows(); }
  const RationalMatrix& matrix() const { return matrix_; }
  unsigned center() const { return center_; }

 private:
  RationalMatrix matrix_;
  unsigned center_;
};

// W_{-1} ⊆ W_0 ⊆ ... ⊆ W_{2m}.
class WeightFiltration {
 public:
  WeightFiltration() = default;
  // levels[k] is W_{k-1}, k = 0..2m+1.
  WeightFiltration(unsigned center, std::vector<Subspace> levels);

  unsigned center() const { return center_; }
  std::size_t dimension() const { return levels_.front().ambient(); }
  // W_j, with W_j = 0 below -1 and W_j = W_{2m} above 2m.
  const Subspace& W(long j) const;
  const std::vector<Subspace>& levels() const { return levels_; }

  friend bool operator==(const WeightFiltration&, const WeightFiltration&) = default;

 private:
  unsigned center_ = 0;
  std::vector<Subspace> levels_;
  Subspace zero_;
};

struct WeightAxiomReport {
  bool shift_ok = false;
  bool iso_ok = false;
};

// W_{m+l} = sum_j (ker N^{l+j+1} ∩ im N^j). The result is checked against the
// axioms; a failure is an InternalError.
WeightFiltration weight_filtration(const NilpotentOperator& op);

// dim Gr_j for j = 0..2m.
std::vector<std::size_t> graded_dimensions(const WeightFiltration& wf);

// Columns lifting a basis of ker(N^{l+1}: Gr_{m+l} -> Gr_{m-l-2}).
RationalMatrix primitive_subspace(const NilpotentOperator& op, const WeightFiltration& wf, long l);

// shift_ok: boundary levels, chain inclusions and N W_l ⊆ W_{l-2}.
// iso_ok: N^l : Gr_{m+l} -> Gr_{m-l} bijective for l = 0..m, with m the
// operator's center.
WeightAxiomReport verify_weight_axioms(const NilpotentOperator& op, const WeightFiltration& wf);

}  // namespace mfres
