#include "mfres/hodge.hpp"

#include <utility>

#include "mfres/error.hpp"

namespace mfres {

NilpotentOperator::NilpotentOperator(RationalMatrix matrix, unsigned center)
    : matrix_(std::move(matrix)), center_(center) {
  if (!matrix_.is_square()) throw DomainError("nilpotent operator: matrix is not square");
  if (!matrix_.pow(center_ + 1).is_zero())
    throw DomainError("nilpotent operator: N^" + std::to_string(center_ + 1) + " != 0 for center " +
                      std::to_string(center_));
}

WeightFiltration::WeightFiltration(unsigned center, std::vector<Subspace> levels)
    : center_(center), levels_(std::move(levels)) {
  if (levels_.size() != 2 * static_cast<std::size_t>(center_) + 2)
    throw DomainError("weight filtration: expected " + std::to_string(2 * center_ + 2) + " levels");
  zero_ = Subspace::zero(levels_.front().ambient());
}

const Subspace& WeightFiltration::W(long j) const {
  if (j < -1) return zero_;
  const long top = 2 * static_cast<long>(center_);
  if (j > top) return levels_.back();
  return levels_[static_cast<std::size_t>(j + 1)];
}

WeightFiltration weight_filtration(const NilpotentOperator& op) {
  const std::size_t d = op.dimension();
  const long m = op.center();
  const RationalMatrix& n = op.matrix();
  // powers[k] = N^k, k = 0..2m+2
  std::vector<RationalMatrix> powers{RationalMatrix::identity(d)};
  for (long k = 1; k <= 2 * m + 2; ++k) powers.push_back(powers.back() * n);
  std::vector<Subspace> kernels, images;
  for (const auto& p : powers) {
    kernels.push_back(Subspace::kernel(p));
    images.push_back(Subspace::image(p));
  }

  std::vector<Subspace> levels;
  for (long l = -m - 1; l <= m; ++l) {
    Subspace w = Subspace::zero(d);
    for (long j = 0; j <= m; ++j) {
      const long k = l + j + 1;
      if (k <= 0) continue;
      w = w + kernels[static_cast<std::size_t>(k)].intersect(images[static_cast<std::size_t>(j)]);
    }
    levels.push_back(std::move(w));
  }
  WeightFiltration wf(op.center(), std::move(levels));
  WeightAxiomReport r = verify_weight_axioms(op, wf);
  if (!r.shift_ok || !r.iso_ok) throw InternalError("weight filtration failed its own axiom check");
  return wf;
}

std::vector<std::size_t> graded_dimensions(const WeightFiltration& wf) {
  std::vector<std::size_t> out;
  for (long j = 0; j <= 2 * static_cast<long>(wf.center()); ++j) out.push_back(wf.W(j).dim() - wf.W(j - 1).dim());
  return out;
}

RationalMatrix primitive_subspace(const NilpotentOperator& op, const WeightFiltration& wf, long l) {
  const long m = op.center();
  if (l < 0 || l > m) throw DomainError("primitive_subspace: l = " + std::to_string(l) + " outside 0.." + std::to_string(m));
  const RationalMatrix nl = op.matrix().pow(static_cast<unsigned>(l + 1));
  Subspace s = wf.W(m - l - 3).preimage_under(nl).intersect(wf.W(m + l));
  const Subspace& below = wf.W(m + l - 1);
  return (s + below).complement_of(below);
}

WeightAxiomReport verify_weight_axioms(const NilpotentOperator& op, const WeightFiltration& wf) {
  WeightAxiomReport r;
  const std::size_t d = op.dimension();
  if (wf.dimension() != d) return r;
  const long m = op.center();
  const long top = 2 * static_cast<long>(wf.center());
  const RationalMatrix& n = op.matrix();

  r.shift_ok = wf.W(-1).dim() == 0 && wf.W(top).dim() == d;
  for (long j = 0; j <= top && r.shift_ok; ++j) r.shift_ok = wf.W(j).contains(wf.W(j - 1));
  for (long j = -1; j <= top && r.shift_ok; ++j) r.shift_ok = wf.W(j - 2).contains(wf.W(j).image_under(n));

  r.iso_ok = true;
  RationalMatrix nl = RationalMatrix::identity(d);
  for (long l = 0; l <= m && r.iso_ok; ++l) {
    if (l > 0) nl = nl * n;
    const Subspace& src = wf.W(m + l);
    const Subspace& src_below = wf.W(m + l - 1);
    const Subspace& dst = wf.W(m - l);
    const Subspace& dst_below = wf.W(m - l - 1);
    if (!src.contains(src_below) || !dst.contains(dst_below)) {
      r.iso_ok = false;
      break;
    }
    // well defined, injective, surjective
    Subspace img = src.image_under(nl);
    if (!dst.contains(img) || !dst.contains(src_below.image_under(nl)) ||
        !dst_below.contains(src_below.image_under(nl))) {
      r.iso_ok = false;
      break;
    }
    Subspace kernel_mod = dst_below.preimage_under(nl).intersect(src);
    r.iso_ok = kernel_mod == src_below && img + dst_below == dst;
  }
  return r;
}

}  // namespace mfres
