#include "mfres/mf.hpp"

#include <utility>

namespace mfres {

InvalidFactorizationError::InvalidFactorizationError(const std::string& label, const std::string& detail,
                                                     std::size_t row, std::size_t col)
    : DomainError("factorization \"" + label + "\": " + detail), label_(label), row_(row), col_(col) {}

MatrixFactorization MatrixFactorization::with_label(std::string label) const {
  MatrixFactorization copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

namespace {

void check_product(const PolyMatrix& product, const Polynomial& f, const std::string& label,
                   const char* which) {
  for (std::size_t i = 0; i < product.rows(); ++i)
    for (std::size_t j = 0; j < product.cols(); ++j) {
      const Polynomial expected = i == j ? f : Polynomial::zero(f.ring());
      if (!(product(i, j) == expected)) {
        throw InvalidFactorizationError(
            label,
            std::string(which) + " != f*I at entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                "): got " + product(i, j).to_string() + ", expected " + expected.to_string(),
            i + 1, j + 1);
      }
    }
}

}  // namespace

MatrixFactorization validate_mf(FactorizationData c) {
  if (!c.potential.ring()) throw InvalidFactorizationError(c.label, "potential has no ring");
  if (!c.a.is_square() || !c.b.is_square() || c.a.rows() != c.b.rows() || c.a.rows() == 0)
    throw InvalidFactorizationError(c.label, "A and B must be square matrices of the same positive size");
  for (const PolyMatrix* m : {&c.a, &c.b})
    for (const auto& e : m->entries())
      if (e.ring() && !(*e.ring() == *c.potential.ring()))
        throw InvalidFactorizationError(c.label, "matrix entries and potential live in different rings");
  check_product(c.a * c.b, c.potential, c.label, "A*B");
  check_product(c.b * c.a, c.potential, c.label, "B*A");
  return MatrixFactorization(std::move(c.potential), std::move(c.a), std::move(c.b), std::move(c.label));
}

MatrixFactorization shift(const MatrixFactorization& mf) {
  return validate_mf({mf.potential(), mf.b(), mf.a(), mf.label() + "[1]"});
}

MatrixFactorization dual(const MatrixFactorization& mf) {
  return validate_mf({mf.potential(), mf.a().transpose(), mf.b().transpose(), mf.label() + "*"});
}

MatrixFactorization direct_sum(const MatrixFactorization& x, const MatrixFactorization& y) {
  if (!(x.potential() == y.potential())) throw DomainError("direct_sum: potentials differ");
  const std::size_t r = x.size(), s = y.size();
  PolyMatrix a(x.ring(), r + s, r + s), b(x.ring(), r + s, r + s);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      a(i, j) = x.a()(i, j);
      b(i, j) = x.b()(i, j);
    }
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      a(r + i, r + j) = y.a()(i, j);
      b(r + i, r + j) = y.b()(i, j);
    }
  return validate_mf({x.potential(), std::move(a), std::move(b), x.label() + "+" + y.label()});
}

MatrixFactorization trivial_factorization(const Polynomial& f) {
  return validate_mf({f, PolyMatrix::identity(f.ring(), 1), PolyMatrix::scalar(f, 1), "trivial"});
}

MatrixFactorization relabel(const MatrixFactorization& mf, const RingPtr& target,
                            const std::vector<std::size_t>& perm) {
  return validate_mf({mf.potential().relabel(target, perm), mf.a().relabel(target, perm),
                      mf.b().relabel(target, perm), mf.label()});
}

namespace {

// Block placement helpers for maps on r' x r matrices flattened row-major.
class BlockBuilder {
 public:
  BlockBuilder(PolyMatrix& target, std::size_t rows_out, std::size_t cols_out)
      : target_(target), rp_(rows_out), r_(cols_out) {}

  // alpha -> X alpha, with X of size rp x rp.
  void left(std::size_t row_block, std::size_t col_block, const PolyMatrix& x, bool negate) {
    const std::size_t n = rp_ * r_;
    for (std::size_t a = 0; a < rp_; ++a)
      for (std::size_t b = 0; b < r_; ++b)
        for (std::size_t c = 0; c < rp_; ++c) {
          const Polynomial& e = x(a, c);
          if (e.is_zero()) continue;
          target_(row_block * n + a * r_ + b, col_block * n + c * r_ + b) += negate ? -e : e;
        }
  }

  // alpha -> alpha Y, with Y of size r x r.
  void right(std::size_t row_block, std::size_t col_block, const PolyMatrix& y, bool negate) {
    const std::size_t n = rp_ * r_;
    for (std::size_t a = 0; a < rp_; ++a)
      for (std::size_t b = 0; b < r_; ++b)
        for (std::size_t e = 0; e < r_; ++e) {
          const Polynomial& v = y(e, b);
          if (v.is_zero()) continue;
          target_(row_block * n + a * r_ + b, col_block * n + a * r_ + e) += negate ? -v : v;
        }
  }

 private:
  PolyMatrix& target_;
  std::size_t rp_;
  std::size_t r_;
};

std::vector<FreeModuleElement> columns(const PolyMatrix& m) {
  std::vector<FreeModuleElement> out;
  out.reserve(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) out.emplace_back(m.column(j));
  return out;
}

// Homology at U of  W -in-> U -out-> V  where U = Q^u / rel_u and
// V = Q^v / rel_v: the preimage of rel_v under `out`, modulo im(in) + rel_u.
std::size_t homology_at(const PolyMatrix& out, const PolyMatrix& in, const std::vector<FreeModuleElement>& rel_u,
                        const std::vector<FreeModuleElement>& rel_v, MonomialOrder order) {
  const std::size_t u = out.cols();
  std::vector<FreeModuleElement> gens = columns(out);
  gens.insert(gens.end(), rel_v.begin(), rel_v.end());
  std::vector<FreeModuleElement> preimage;
  for (const auto& s : syzygy_basis(gens, order)) {
    std::vector<Polynomial> head(s.components().begin(), s.components().begin() + static_cast<std::ptrdiff_t>(u));
    FreeModuleElement k(std::move(head));
    if (!k.is_zero()) preimage.push_back(std::move(k));
  }
  std::vector<FreeModuleElement> image = columns(in);
  image.insert(image.end(), rel_u.begin(), rel_u.end());
  std::erase_if(image, [](const FreeModuleElement& e) { return e.is_zero(); });
  return subquotient_dimension(preimage, image, order);
}

}  // namespace

TwoPeriodicComplex hom_complex(const MatrixFactorization& left, const MatrixFactorization& right) {
  if (!(left.potential() == right.potential()))
    throw DomainError("hom_complex: potentials differ (\"" + left.label() + "\" vs \"" + right.label() + "\")");
  const std::size_t r = left.size(), rp = right.size();
  const std::size_t n = r * rp;
  const RingPtr& ring = left.ring();
  const PolyMatrix& a = left.a();
  const PolyMatrix& b = left.b();
  const PolyMatrix& ap = right.a();
  const PolyMatrix& bp = right.b();

  TwoPeriodicComplex c;
  c.rank_even = 2 * n;
  c.rank_odd = 2 * n;
  c.d_even_to_odd = PolyMatrix(ring, 2 * n, 2 * n);
  c.d_odd_to_even = PolyMatrix(ring, 2 * n, 2 * n);

  // Even (a0, a1); odd (g, h) with g: P1 -> P0', h: P0 -> P1'.
  //   g = A' a1 - a0 A,  h = B' a0 - a1 B
  BlockBuilder eo(c.d_even_to_odd, rp, r);
  eo.right(0, 0, a, true);
  eo.left(0, 1, ap, false);
  eo.left(1, 0, bp, false);
  eo.right(1, 1, b, true);
  //   a0 = A' h + g B,  a1 = B' g + h A
  BlockBuilder oe(c.d_odd_to_even, rp, r);
  oe.right(0, 0, b, false);
  oe.left(0, 1, ap, false);
  oe.left(1, 0, bp, false);
  oe.right(1, 1, a, false);

  if (!(c.d_odd_to_even * c.d_even_to_odd).is_zero() || !(c.d_even_to_odd * c.d_odd_to_even).is_zero())
    throw InternalError("hom_complex: differential does not square to zero");
  return c;
}

HomologyDimensions homology_dimensions(const TwoPeriodicComplex& c, MonomialOrder order) {
  HomologyDimensions h;
  h.even = homology_at(c.d_even_to_odd, c.d_odd_to_even, {}, {}, order);
  h.odd = homology_at(c.d_odd_to_even, c.d_even_to_odd, {}, {}, order);
  return h;
}

std::vector<FreeModuleElement> ModulePresentation::relations_with_potential() const {
  std::vector<FreeModuleElement> rels = relations;
  for (std::size_t i = 0; i < rank; ++i) {
    FreeModuleElement e(ring(), rank);
    e[i] = potential;
    rels.push_back(std::move(e));
  }
  return rels;
}

ModulePresentation cokernel_presentation(const MatrixFactorization& mf) {
  ModulePresentation p;
  p.potential = mf.potential();
  p.rank = mf.size();
  p.relations = columns(mf.a());
  p.over = PresentationBase::R;
  p.label = "coker(" + mf.label() + ")";
  return p;
}

namespace {

// X (r x r) acting on N^r = R^r (x) N, indexed (i, a) -> i * s + a.
PolyMatrix tensor_with_identity(const PolyMatrix& x, std::size_t s) {
  const std::size_t r = x.rows();
  PolyMatrix out(x.ring(), r * s, r * s);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t a = 0; a < s; ++a) out(i * s + a, j * s + a) = x(i, j);
  return out;
}

void check_annihilated_by_potential(const ModulePresentation& n) {
  if (n.over == PresentationBase::R) return;
  GroebnerBasis gb = groebner_basis(n.ring(), n.rank, n.relations);
  for (std::size_t i = 0; i < n.rank; ++i) {
    FreeModuleElement e(n.ring(), n.rank);
    e[i] = n.potential;
    if (!contains(gb, e))
      throw DomainError("module \"" + n.label + "\" is not annihilated by the potential, so it is not an R-module");
  }
}

}  // namespace

TorLengths tor_lengths(const MatrixFactorization& mf, const ModulePresentation& n_module, MonomialOrder order) {
  if (!(mf.potential() == n_module.potential))
    throw DomainError("tor_lengths: module \"" + n_module.label + "\" is over a different potential");
  check_annihilated_by_potential(n_module);
  const std::size_t r = mf.size();
  const std::size_t s = n_module.rank;
  if (s == 0) return {};

  // Relations of N^r: e_i (x) rel for every relation of N (f included).
  std::vector<FreeModuleElement> rel_n = n_module.relations_with_potential();
  std::vector<FreeModuleElement> rel;
  for (std::size_t i = 0; i < r; ++i)
    for (const auto& v : rel_n) {
      FreeModuleElement e(mf.ring(), r * s);
      for (std::size_t a = 0; a < s; ++a) e[i * s + a] = v[a];
      rel.push_back(std::move(e));
    }
  PolyMatrix a = tensor_with_identity(mf.a(), s);
  PolyMatrix b = tensor_with_identity(mf.b(), s);
  TorLengths t;
  t.even = homology_at(b, a, rel, rel, order);
  t.odd = homology_at(a, b, rel, rel, order);
  return t;
}

namespace {

// Generators of ker(d) over R, d : R^cols -> R^rows given by a Q-matrix,
// pruned so that no generator lies in the span of the others plus f Q^cols.
std::vector<FreeModuleElement> kernel_over_r(const PolyMatrix& d, const Polynomial& f, MonomialOrder order) {
  const std::size_t cols = d.cols();
  const RingPtr& ring = f.ring();
  std::vector<FreeModuleElement> gens = columns(d);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    FreeModuleElement e(ring, d.rows());
    e[i] = f;
    gens.push_back(std::move(e));
  }
  std::vector<FreeModuleElement> kernel;
  for (const auto& s : syzygy_basis(gens, order)) {
    std::vector<Polynomial> head(s.components().begin(), s.components().begin() + static_cast<std::ptrdiff_t>(cols));
    FreeModuleElement k(std::move(head));
    if (!k.is_zero()) kernel.push_back(std::move(k));
  }
  std::vector<FreeModuleElement> f_multiples;
  for (std::size_t i = 0; i < cols; ++i) {
    FreeModuleElement e(ring, cols);
    e[i] = f;
    f_multiples.push_back(std::move(e));
  }
  for (std::size_t idx = kernel.size(); idx-- > 0;) {
    std::vector<FreeModuleElement> others = f_multiples;
    for (std::size_t j = 0; j < kernel.size(); ++j)
      if (j != idx) others.push_back(kernel[j]);
    if (contains(groebner_basis(ring, cols, others, order), kernel[idx]))
      kernel.erase(kernel.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return kernel;
}

PolyMatrix matrix_from_columns(const RingPtr& ring, std::size_t rows, const std::vector<FreeModuleElement>& cols) {
  PolyMatrix m(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

}  // namespace

StabilizedModule stabilize(const ModulePresentation& module, MonomialOrder order, std::size_t max_steps) {
  check_annihilated_by_potential(module);
  const Polynomial& f = module.potential;
  const RingPtr& ring = module.ring();

  std::vector<FreeModuleElement> rels = module.relations;
  std::erase_if(rels, [](const FreeModuleElement& e) { return e.is_zero(); });
  if (module.over == PresentationBase::Q) {
    // f e_i are relations over Q but vanish over R; drop the redundant ones.
    std::vector<FreeModuleElement> pruned;
    for (std::size_t idx = 0; idx < rels.size(); ++idx) {
      std::vector<FreeModuleElement> base = pruned;
      for (std::size_t j = idx + 1; j < rels.size(); ++j) base.push_back(rels[j]);
      for (std::size_t i = 0; i < module.rank; ++i) {
        FreeModuleElement e(ring, module.rank);
        e[i] = f;
        base.push_back(std::move(e));
      }
      if (!contains(groebner_basis(ring, module.rank, base, order), rels[idx])) pruned.push_back(rels[idx]);
    }
    rels = std::move(pruned);
  }
  if (module.rank == 0 || rels.empty()) return {};  // free over R

  // d[0] presents the module; d[k] presents its k-th syzygy.
  std::vector<PolyMatrix> d;
  d.push_back(matrix_from_columns(ring, module.rank, rels));
  for (std::size_t step = 0; step < max_steps; ++step) {
    const std::size_t k = d.size();
    if (k >= 3 && d[k - 1] == d[k - 3] && d[k - 3].is_square() && d[k - 2].is_square() &&
        d[k - 3].rows() == d[k - 2].rows()) {
      const PolyMatrix& a = d[k - 3];
      const PolyMatrix& b = d[k - 2];
      if (a * b == PolyMatrix::scalar(f, a.rows()) && b * a == PolyMatrix::scalar(f, a.rows())) {
        StabilizedModule out;
        out.factorization = validate_mf({f, a, b, module.label + "^stable"});
        out.syzygy_index = k - 3;
        return out;
      }
    }
    std::vector<FreeModuleElement> kernel = kernel_over_r(d.back(), f, order);
    if (kernel.empty()) return {};  // finite projective dimension
    d.push_back(matrix_from_columns(ring, d.back().cols(), kernel));
  }
  throw DomainError("module \"" + module.label + "\": resolution did not become 2-periodic within " +
                    std::to_string(max_steps) + " steps");
}

}  // namespace mfres
