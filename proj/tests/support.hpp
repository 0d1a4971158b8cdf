#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mfres/hodge.hpp"
#include "mfres/mf.hpp"
#include "mfres/pairings.hpp"

namespace testing_support {

using namespace mfres;

Polynomial P(const RingPtr& r, const std::string& s);
PolyMatrix mat(const RingPtr& r, std::size_t n, const std::vector<std::string>& entries);
MatrixFactorization make_mf(const Polynomial& f, const PolyMatrix& a, const PolyMatrix& b, const std::string& label);
MatrixFactorization make_mf(const RingPtr& r, const std::string& f, std::size_t n, const std::vector<std::string>& a,
                            const std::vector<std::string>& b, const std::string& label);
ModulePresentation cyclic_module(const Polynomial& f, const std::vector<std::string>& gens, const std::string& label);

Polynomial random_poly(const RingPtr& r, std::mt19937& rng, unsigned max_degree, std::size_t terms, int coef_range,
                       bool allow_constant = true);
PolyMatrix random_matrix(const RingPtr& r, std::mt19937& rng, std::size_t n, unsigned max_degree, std::size_t terms);
DifferentialForm random_form(const RingPtr& r, std::mt19937& rng, unsigned degree);
// (A, adj A) with f = det A; nullopt when det A = 0.
std::optional<MatrixFactorization> random_adjugate_mf(const RingPtr& r, std::mt19937& rng, std::size_t n,
                                                       unsigned max_degree);

// Oracles, independent of the Groebner engine.

// dim Q/(a, b) for two variables and a linear form a (no constant term):
// substitute the solved variable and read the degree of the univariate result.
std::size_t linear_substitution_length(const Polynomial& a, const Polynomial& b);

// End complex of a rank-one factorization (a, b) has homology (dim Q/(a,b), 0)
// when a and b are coprime; chi is the length computed above.
long rank_one_chi_oracle(const MatrixFactorization& mf);

// mu when each partial derivative is a polynomial in a single variable and
// the variables are distinct: product of the degrees. nullopt otherwise.
std::optional<std::size_t> separable_milnor_oracle(const Polynomial& f);

// Grothendieck residue of g / (df/dx_0 ... df/dx_n) by the transformation law:
// find x_i^{N} = sum_j a_ij df/dx_j by an exact linear solve, then take the
// coefficient of prod x_i^{N-1} in g * det(a). Returns nullopt if no such
// representation with N <= max_power was found.
std::optional<Rational> transformation_law_residue(const Polynomial& f, const Polynomial& g, unsigned max_power = 8);

// Nilpotent matrix similar to the Jordan form with the given block sizes.
RationalMatrix jordan_matrix(const std::vector<unsigned>& blocks);
RationalMatrix random_similar(const RationalMatrix& n, std::mt19937& rng);
RationalMatrix inverse(const RationalMatrix& m);
std::vector<unsigned> random_blocks(std::mt19937& rng, unsigned max_dim);
// dim Gr_j, j = 0..2m, from sl2 weights of the blocks.
std::vector<std::size_t> sl2_graded_dimensions(const std::vector<unsigned>& blocks, unsigned center);

// Count of filtrations built from sums of ker N^a ∩ im N^b that satisfy the
// axioms, and whether the unique one equals `expected`.
struct UniquenessResult {
  std::size_t passing = 0;
  bool matches = false;
};
UniquenessResult brute_force_weight_filtrations(const NilpotentOperator& op, const WeightFiltration& expected);

// Random integer combination of a basis of {g : g N = N' g}; nullopt if only 0.
std::optional<RationalMatrix> random_intertwiner(const RationalMatrix& n, const RationalMatrix& n2, std::mt19937& rng);

}  // namespace testing_support
