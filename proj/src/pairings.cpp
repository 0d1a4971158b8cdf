#include "mfres/pairings.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <utility>

#include "mfres/error.hpp"

namespace mfres {

// MilnorAlgebra

namespace {

GroebnerBasis checked_jacobian_basis(const Polynomial& f, MonomialOrder order) {
  if (!f.ring()) throw DomainError("milnor_algebra: potential has no ring");
  if (f.constant_term() != 0)
    throw DomainError("milnor_algebra: f(0) = " + to_string(f.constant_term()) + " is not zero");
  return ideal_basis(f.ring(), jacobian_generators(f), order);
}

FiniteQuotientBasis checked_basis(const GroebnerBasis& gb, const Polynomial& f) {
  auto basis = quotient_dimension(gb);
  if (!basis)
    throw DomainError("milnor_algebra: the singularity of " + f.to_string() +
                      " is not isolated (Jacobian quotient is infinite-dimensional)");
  if (!origin_support_check(gb))
    throw DomainError("milnor_algebra: " + f.to_string() + " has critical points away from the origin");
  return *basis;
}

}  // namespace

MilnorAlgebra::MilnorAlgebra(Polynomial potential, MonomialOrder order)
    : potential_(std::move(potential)),
      jacobian_gb_(checked_jacobian_basis(potential_, order)),
      basis_(checked_basis(jacobian_gb_, potential_)) {}

Polynomial MilnorAlgebra::reduce(const Polynomial& p) const { return normal_form(p, jacobian_gb_); }

std::vector<Rational> MilnorAlgebra::coordinates(const Polynomial& p) const {
  return quotient_coordinates(jacobian_gb_, basis_, FreeModuleElement(std::vector<Polynomial>{p}));
}

std::vector<Polynomial> MilnorAlgebra::basis_polynomials() const {
  std::vector<Polynomial> out;
  for (const auto& sm : basis_.standard_monomials) out.push_back(Polynomial::monomial(ring(), sm.monomial, 1));
  return out;
}

MilnorAlgebra milnor_algebra(const Polynomial& f, MonomialOrder order) { return MilnorAlgebra(f, order); }

// ResidueFunctional

ResidueFunctional::ResidueFunctional(MilnorAlgebra algebra) : algebra_(std::move(algebra)) {
  const std::vector<Rational> hess = algebra_.coordinates(hessian_determinant(algebra_.potential()));
  // The Hessian spans the socle. Dual basis to {hess} together with the
  // standard monomials other than the top one hess involves.
  std::size_t pivot = hess.size();
  for (std::size_t i = hess.size(); i-- > 0;)
    if (hess[i] != 0) {
      pivot = i;
      break;
    }
  if (pivot == hess.size())
    throw DomainError("residue_functional: the Hessian class of " + algebra_.potential().to_string() +
                      " vanishes in the Milnor algebra; cannot normalize");
  values_.assign(hess.size(), Rational(0));
  values_[pivot] = Rational(static_cast<unsigned long>(algebra_.milnor_number())) / hess[pivot];
}

Rational ResidueFunctional::operator()(const Polynomial& p) const {
  std::vector<Rational> c = algebra_.coordinates(p);
  Rational sum = 0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += c[i] * values_[i];
  return sum;
}

ResidueFunctional residue_functional(const MilnorAlgebra& algebra) { return ResidueFunctional(algebra); }

Rational residue_pairing(const ResidueFunctional& rf, const DifferentialForm& a, const DifferentialForm& b) {
  const std::size_t n = rf.algebra().ring()->size();
  if (a.degree() != n || b.degree() != n)
    throw DomainError("residue_pairing: both forms must have top degree " + std::to_string(n));
  return rf(a.top_coefficient() * b.top_coefficient());
}

long euler_pairing(const MatrixFactorization& left, const MatrixFactorization& right, MonomialOrder order) {
  HomologyDimensions h = homology_dimensions(hom_complex(left, right), order);
  return static_cast<long>(h.even) - static_cast<long>(h.odd);
}

std::vector<Rational> chern_milnor_class(const MatrixFactorization& mf, const MilnorAlgebra& algebra) {
  if (!(mf.potential() == algebra.potential()))
    throw DomainError("chern_milnor_class: factorization \"" + mf.label() + "\" has a different potential");
  return algebra.coordinates(chern_character_form(mf).top_coefficient());
}

HrrReport hrr_check(const MatrixFactorization& left, const MatrixFactorization& right, const ResidueFunctional& rf,
                    MonomialOrder order) {
  const Polynomial& f = rf.algebra().potential();
  if (!(left.potential() == f) || !(right.potential() == f))
    throw DomainError("hrr_check: factorizations and residue functional disagree on the potential");
  HrrReport report;
  report.chi = euler_pairing(left, right, order);
  report.residue_side = residue_pairing(rf, chern_character_form(left), chern_character_form(right));
  const std::size_t d = f.ring()->size();  // n + 1
  const std::size_t binom = d * (d - 1) / 2;
  report.sign = binom % 2 == 0 ? 1 : -1;
  report.equal = Rational(report.chi) == report.residue_side * report.sign;
  return report;
}

ModulePresentation as_presentation(const ModuleSource& m) {
  if (const auto* mf = std::get_if<MatrixFactorization>(&m)) {
    ModulePresentation p = cokernel_presentation(*mf);
    p.label = mf->label();
    return p;
  }
  return std::get<ModulePresentation>(m);
}

std::string source_label(const ModuleSource& m) {
  if (const auto* mf = std::get_if<MatrixFactorization>(&m)) return mf->label();
  return std::get<ModulePresentation>(m).label;
}

long hochster_theta(const ModuleSource& m, const ModulePresentation& n_module, MonomialOrder order) {
  if (const auto* mf = std::get_if<MatrixFactorization>(&m)) {
    TorLengths t = tor_lengths(*mf, n_module, order);
    return static_cast<long>(t.even) - static_cast<long>(t.odd);
  }
  StabilizedModule s = stabilize(std::get<ModulePresentation>(m), order);
  if (!s.factorization) return 0;
  TorLengths t = tor_lengths(*s.factorization, n_module, order);
  long theta = static_cast<long>(t.even) - static_cast<long>(t.odd);
  // Tor_i(syz^k M, N) = Tor_{i+k}(M, N) for i >= 1.
  return s.syzygy_index % 2 == 0 ? theta : -theta;
}

long hochster_theta(const ModuleSource& m, const ModuleSource& n_module, MonomialOrder order) {
  return hochster_theta(m, as_presentation(n_module), order);
}

long herbrand_difference(const MatrixFactorization& m, const MatrixFactorization& m2, MonomialOrder order) {
  HomologyDimensions h = homology_dimensions(hom_complex(m, m2), order);
  return static_cast<long>(h.even) - static_cast<long>(h.odd);
}

PairingKind parse_pairing_kind(const std::string& name) {
  if (name == "euler") return PairingKind::euler;
  if (name == "theta") return PairingKind::theta;
  if (name == "signed_theta") return PairingKind::signed_theta;
  throw ParseError("unknown pairing '" + name + "' (expected euler, theta or signed_theta)");
}

std::string to_string(PairingKind kind) {
  switch (kind) {
    case PairingKind::euler:
      return "euler";
    case PairingKind::theta:
      return "theta";
    case PairingKind::signed_theta:
      return "signed_theta";
  }
  return "?";
}

GramMatrix gram_matrix(const std::vector<ModuleSource>& items, PairingKind pairing, MonomialOrder order,
                       unsigned threads) {
  const std::size_t n = items.size();
  GramMatrix g;
  g.entries = RationalMatrix(n, n);
  for (const auto& item : items) g.labels.push_back(source_label(item));
  if (n == 0) return g;

  long sign = 1;
  std::vector<ModulePresentation> presentations;
  if (pairing == PairingKind::euler) {
    for (const auto& item : items)
      if (!std::holds_alternative<MatrixFactorization>(item))
        throw DomainError("gram: the euler pairing needs matrix factorizations, \"" + source_label(item) +
                          "\" is a module presentation");
  } else {
    for (const auto& item : items) presentations.push_back(as_presentation(item));
    if (pairing == PairingKind::signed_theta) {
      const std::size_t dim_q = presentations.front().ring()->size();
      if (dim_q % 2 != 0)
        throw DomainError("gram: signed_theta needs an even number of variables, got " + std::to_string(dim_q));
      sign = (dim_q / 2) % 2 == 0 ? 1 : -1;
    }
  }

  std::vector<long> values(n * n, 0);
  std::vector<std::exception_ptr> errors(n * n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n * n; k = next++) {
      const std::size_t i = k / n, j = k % n;
      try {
        if (pairing == PairingKind::euler)
          values[k] = euler_pairing(std::get<MatrixFactorization>(items[i]), std::get<MatrixFactorization>(items[j]),
                                    order);
        else
          values[k] = sign * hochster_theta(items[i], presentations[j], order);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n * n)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.entries(i, j) = values[i * n + j];
  return g;
}

PsdReport is_positive_semidefinite(const RationalMatrix& g) {
  if (!g.is_symmetric()) throw DomainError("is_positive_semidefinite: matrix is not symmetric");
  const std::size_t n = g.rows();
  RationalMatrix m = g;
  std::vector<bool> active(n, true);
  PsdReport report;
  report.psd = true;
  for (;;) {
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n; ++i)
      if (active[i] && (pivot == n || m(i, i) > m(pivot, pivot))) pivot = i;
    if (pivot == n) break;
    if (m(pivot, pivot) < 0) {
      report.psd = false;
      break;
    }
    if (m(pivot, pivot) == 0) {
      // All remaining diagonal entries are <= 0 here; PSD only if the whole
      // remaining block vanishes.
      for (std::size_t i = 0; i < n && report.psd; ++i)
        for (std::size_t j = 0; j < n && report.psd; ++j)
          if (active[i] && active[j] && m(i, j) != 0) report.psd = false;
      break;
    }
    const Rational p = m(pivot, pivot);
    active[pivot] = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || m(i, pivot) == 0) continue;
      const Rational factor = m(i, pivot) / p;
      for (std::size_t j = 0; j < n; ++j)
        if (active[j]) m(i, j) -= factor * m(pivot, j);
    }
  }
  // the elimination stops early on failure, so take the rank from the kernel
  RationalMatrix null = g.nullspace();
  report.rank = n - null.cols();
  if (report.psd)
    for (std::size_t c = 0; c < null.cols(); ++c) report.kernel_basis.push_back(null.column(c));
  return report;
}

PsdReport is_positive_semidefinite(const GramMatrix& g) { return is_positive_semidefinite(g.entries); }

Rational pair_classes(const GramMatrix& g, const std::vector<long>& left, const std::vector<long>& right) {
  const std::size_t n = g.labels.size();
  if (left.size() != n || right.size() != n) throw DomainError("pair_classes: coefficient vector length mismatch");
  Rational sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (left[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (right[j] != 0) sum += g.entries(i, j) * left[i] * right[j];
  }
  return sum;
}

std::vector<Rational> combine_classes(const std::vector<std::vector<Rational>>& classes,
                                      const std::vector<long>& coefficients) {
  if (classes.size() != coefficients.size()) throw DomainError("combine_classes: length mismatch");
  if (classes.empty()) return {};
  std::vector<Rational> out(classes.front().size());
  for (std::size_t k = 0; k < classes.size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += classes[k][i] * coefficients[k];
  return out;
}

}  // namespace mfres
