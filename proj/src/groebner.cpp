#include "mfres/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "mfres/error.hpp"

namespace mfres {

using detail::ModuleTerm;
using detail::TermVector;

// FreeModuleElement

FreeModuleElement::FreeModuleElement(RingPtr ring, std::size_t rank)
    : ring_(ring), components_(rank, Polynomial::zero(ring)) {}

FreeModuleElement::FreeModuleElement(std::vector<Polynomial> components)
    : components_(std::move(components)) {
  for (const auto& c : components_) {
    if (!c.ring()) continue;
    if (!ring_) ring_ = c.ring();
    else if (!(*ring_ == *c.ring())) throw DomainError("module element mixes rings");
  }
}

FreeModuleElement FreeModuleElement::unit(RingPtr ring, std::size_t rank, std::size_t index) {
  FreeModuleElement e(ring, rank);
  e.components_.at(index) = Polynomial::constant(ring, 1);
  return e;
}

bool FreeModuleElement::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

FreeModuleElement FreeModuleElement::operator+(const FreeModuleElement& other) const {
  if (rank() != other.rank()) throw DomainError("module element rank mismatch");
  FreeModuleElement s = *this;
  for (std::size_t i = 0; i < rank(); ++i) s.components_[i] += other.components_[i];
  if (!s.ring_) s.ring_ = other.ring_;
  return s;
}

FreeModuleElement FreeModuleElement::operator-(const FreeModuleElement& other) const {
  if (rank() != other.rank()) throw DomainError("module element rank mismatch");
  FreeModuleElement s = *this;
  for (std::size_t i = 0; i < rank(); ++i) s.components_[i] -= other.components_[i];
  if (!s.ring_) s.ring_ = other.ring_;
  return s;
}

FreeModuleElement FreeModuleElement::operator*(const Polynomial& p) const {
  FreeModuleElement s = *this;
  for (auto& c : s.components_) c = c * p;
  return s;
}

std::string FreeModuleElement::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < rank(); ++i) out << (i ? ", " : "") << components_[i].to_string();
  out << ")";
  return out.str();
}

namespace {

TermVector to_terms(const FreeModuleElement& v, const MonomialOrder& order) {
  TermVector out;
  for (std::size_t c = 0; c < v.rank(); ++c)
    for (const auto& [m, coef] : v[c].terms()) out.push_back({c, m, coef});
  std::sort(out.begin(), out.end(), [&](const ModuleTerm& a, const ModuleTerm& b) {
    return order.compare(a.comp, a.mono, b.comp, b.mono) > 0;
  });
  return out;
}

FreeModuleElement from_terms(const RingPtr& ring, std::size_t rank, const TermVector& terms) {
  std::vector<Polynomial::Terms> comps(rank);
  for (const auto& t : terms) comps[t.comp].emplace(t.mono, t.coef);
  std::vector<Polynomial> polys;
  polys.reserve(rank);
  for (auto& c : comps) polys.emplace_back(ring, std::move(c));
  FreeModuleElement e(std::move(polys));
  if (rank == 0) return FreeModuleElement(ring, 0);
  return e;
}

unsigned max_degree(const TermVector& v) {
  unsigned d = 0;
  for (const auto& t : v) d = std::max(d, t.mono.degree());
  return d;
}

void make_monic(TermVector& v) {
  if (v.empty() || v.front().coef == 1) return;
  Rational inv = 1 / v.front().coef;
  for (auto& t : v) t.coef *= inv;
}

// p[head..] - c * m * g, merged in order.
TermVector sub_multiple(const TermVector& p, std::size_t head, const Rational& c, const Monomial& m,
                        const TermVector& g, const MonomialOrder& order) {
  TermVector out;
  out.reserve(p.size() - head + g.size());
  std::size_t i = head, j = 0;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      out.push_back(p[i++]);
      continue;
    }
    Monomial gm = g[j].mono * m;
    int cmp = i == p.size() ? -1 : order.compare(p[i].comp, p[i].mono, g[j].comp, gm);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back({g[j].comp, std::move(gm), -(c * g[j].coef)});
      ++j;
    } else {
      Rational coef = p[i].coef - c * g[j].coef;
      if (coef != 0) out.push_back({p[i].comp, p[i].mono, std::move(coef)});
      ++i;
      ++j;
    }
  }
  return out;
}

// Reducers are monic.
class Reducer {
 public:
  Reducer(const MonomialOrder& order) : order_(order) {}

  void add(const TermVector* g) { reducers_.push_back(g); }
  void clear() { reducers_.clear(); }

  const TermVector* find(const ModuleTerm& t) const {
    for (const TermVector* g : reducers_) {
      const ModuleTerm& lead = g->front();
      if (lead.comp == t.comp && lead.mono.divides(t.mono)) return g;
    }
    return nullptr;
  }

  // Full reduction: no term of the result is divisible by a reducer's lead.
  TermVector reduce(TermVector p) const {
    TermVector rem;
    std::size_t head = 0;
    while (head < p.size()) {
      const ModuleTerm& t = p[head];
      const TermVector* g = find(t);
      if (!g) {
        rem.push_back(std::move(p[head]));
        ++head;
        continue;
      }
      Monomial q = t.mono / g->front().mono;
      Rational c = t.coef;
      p = sub_multiple(p, head, c, q, *g, order_);
      head = 0;
    }
    return rem;
  }

  // Reduce only while the leading term is reducible.
  TermVector top_reduce(TermVector p) const {
    while (!p.empty()) {
      const TermVector* g = find(p.front());
      if (!g) break;
      Monomial q = p.front().mono / g->front().mono;
      Rational c = p.front().coef;
      p = sub_multiple(p, 0, c, q, *g, order_);
    }
    return p;
  }

 private:
  const MonomialOrder& order_;
  std::vector<const TermVector*> reducers_;
};

struct CriticalPair {
  std::size_t i;
  std::size_t j;
  std::size_t comp;
  Monomial lcm;
  unsigned sugar;
};

int compare_vectors(const TermVector& a, const TermVector& b, const MonomialOrder& order) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    int c = order.compare(a[k].comp, a[k].mono, b[k].comp, b[k].mono);
    if (c != 0) return c;
    if (a[k].coef != b[k].coef) return a[k].coef < b[k].coef ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

class Buchberger {
 public:
  Buchberger(std::size_t rank, MonomialOrder order) : rank_(rank), order_(order) {}

  void add_generator(TermVector v) {
    v = reducer().reduce(std::move(v));
    if (v.empty()) return;
    make_monic(v);
    unsigned sugar = max_degree(v);
    insert(std::move(v), sugar);
  }

  void run() {
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const CriticalPair& a, const CriticalPair& b) {
        if (a.sugar != b.sugar) return a.sugar < b.sugar;
        int c = order_.compare(a.comp, a.lcm, b.comp, b.lcm);
        if (c != 0) return c < 0;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
      });
      CriticalPair pair = *best;
      pairs_.erase(best);
      TermVector s = spoly(pair);
      s = reducer().reduce(std::move(s));
      if (s.empty()) continue;
      make_monic(s);
      insert(std::move(s), pair.sugar);
    }
  }

  // Inter-reduced, sorted by increasing leading term.
  std::vector<TermVector> reduced_basis() const {
    std::vector<TermVector> g;
    for (std::size_t k = 0; k < elements_.size(); ++k)
      if (active_[k]) g.push_back(elements_[k]);
    // Drop elements whose lead is divisible by another lead.
    std::vector<TermVector> minimal;
    for (std::size_t a = 0; a < g.size(); ++a) {
      bool redundant = false;
      for (std::size_t b = 0; b < g.size() && !redundant; ++b) {
        if (a == b || g[a].front().comp != g[b].front().comp) continue;
        if (g[b].front().mono.divides(g[a].front().mono)) {
          redundant = g[b].front().mono != g[a].front().mono || b < a;
        }
      }
      if (!redundant) minimal.push_back(g[a]);
    }
    std::vector<TermVector> out;
    for (std::size_t a = 0; a < minimal.size(); ++a) {
      Reducer others(order_);
      for (std::size_t b = 0; b < minimal.size(); ++b)
        if (b != a) others.add(&minimal[b]);
      TermVector lead{minimal[a].front()};
      TermVector tail(minimal[a].begin() + 1, minimal[a].end());
      tail = others.reduce(std::move(tail));
      lead.insert(lead.end(), std::make_move_iterator(tail.begin()), std::make_move_iterator(tail.end()));
      out.push_back(std::move(lead));
    }
    std::sort(out.begin(), out.end(), [&](const TermVector& a, const TermVector& b) {
      return compare_vectors(a, b, order_) < 0;
    });
    return out;
  }

 private:
  Reducer reducer() const {
    Reducer r(order_);
    for (std::size_t k = 0; k < elements_.size(); ++k)
      if (active_[k]) r.add(&elements_[k]);
    return r;
  }

  TermVector spoly(const CriticalPair& p) const {
    const TermVector& a = elements_[p.i];
    const TermVector& b = elements_[p.j];
    Monomial ma = p.lcm / a.front().mono;
    Monomial mb = p.lcm / b.front().mono;
    TermVector scaled_a;
    scaled_a.reserve(a.size());
    for (const auto& t : a) scaled_a.push_back({t.comp, t.mono * ma, t.coef});
    return sub_multiple(scaled_a, 0, Rational(1), mb, b, order_);
  }

  // Gebauer-Moeller update.
  void insert(TermVector h, unsigned sugar) {
    const std::size_t hi = elements_.size();
    const ModuleTerm& hl = h.front();
    const bool ideal = rank_ == 1;

    std::vector<CriticalPair> candidates;
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      if (!active_[k]) continue;
      const ModuleTerm& gl = elements_[k].front();
      if (gl.comp != hl.comp) continue;
      Monomial l = hl.mono.lcm(gl.mono);
      unsigned s = std::max(sugar + l.degree() - hl.mono.degree(), sugars_[k] + l.degree() - gl.mono.degree());
      candidates.push_back({k, hi, hl.comp, std::move(l), s});
    }

    auto coprime = [&](const CriticalPair& p) {
      return ideal && elements_[p.i].front().mono.coprime(hl.mono);
    };

    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const CriticalPair& p = candidates[a];
      if (coprime(p)) {
        kept.push_back(p);
        continue;
      }
      bool dominated = false;
      for (std::size_t b = a + 1; b < candidates.size() && !dominated; ++b)
        dominated = candidates[b].lcm.divides(p.lcm);
      for (std::size_t b = 0; b < kept.size() && !dominated; ++b)
        dominated = kept[b].lcm.divides(p.lcm);
      if (!dominated) kept.push_back(p);
    }
    std::erase_if(kept, coprime);

    std::erase_if(pairs_, [&](const CriticalPair& p) {
      if (p.comp != hl.comp || !hl.mono.divides(p.lcm)) return false;
      Monomial li = elements_[p.i].front().mono.lcm(hl.mono);
      Monomial lj = elements_[p.j].front().mono.lcm(hl.mono);
      return li != p.lcm && lj != p.lcm;
    });
    for (auto& p : kept) pairs_.push_back(std::move(p));

    for (std::size_t k = 0; k < elements_.size(); ++k) {
      if (active_[k] && elements_[k].front().comp == hl.comp && hl.mono.divides(elements_[k].front().mono))
        active_[k] = false;
    }
    elements_.push_back(std::move(h));
    sugars_.push_back(sugar);
    active_.push_back(true);
  }

  std::size_t rank_;
  MonomialOrder order_;
  std::vector<TermVector> elements_;
  std::vector<unsigned> sugars_;
  std::vector<bool> active_;
  std::vector<CriticalPair> pairs_;
};

void check_elements(const std::vector<FreeModuleElement>& gens, const RingPtr& ring, std::size_t rank) {
  for (const auto& g : gens) {
    if (g.rank() != rank) throw DomainError("generator rank does not match ambient rank");
    if (g.ring() && ring && !(*g.ring() == *ring)) throw DomainError("generator from a different ring");
  }
}

}  // namespace

// GroebnerBasis

GroebnerBasis::GroebnerBasis(RingPtr ring, std::size_t rank, MonomialOrder order,
                             std::vector<TermVector> elements)
    : ring_(std::move(ring)), rank_(rank), order_(order), elements_(std::move(elements)) {}

std::vector<FreeModuleElement> GroebnerBasis::generators() const {
  std::vector<FreeModuleElement> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(from_terms(ring_, rank_, e));
  return out;
}

GroebnerBasis groebner_basis(const RingPtr& ring, std::size_t rank,
                             const std::vector<FreeModuleElement>& generators, MonomialOrder order) {
  check_elements(generators, ring, rank);
  std::vector<TermVector> input;
  for (const auto& g : generators) {
    TermVector t = to_terms(g, order);
    if (!t.empty()) input.push_back(std::move(t));
  }
  // Input-order independence: process generators in module order.
  std::sort(input.begin(), input.end(),
            [&](const TermVector& a, const TermVector& b) { return compare_vectors(a, b, order) < 0; });
  Buchberger engine(rank, order);
  for (auto& t : input) engine.add_generator(std::move(t));
  engine.run();
  return GroebnerBasis(ring, rank, order, engine.reduced_basis());
}

GroebnerBasis ideal_basis(const RingPtr& ring, const std::vector<Polynomial>& generators, MonomialOrder order) {
  std::vector<FreeModuleElement> gens;
  gens.reserve(generators.size());
  for (const auto& p : generators) gens.emplace_back(std::vector<Polynomial>{p});
  return groebner_basis(ring, 1, gens, order);
}

FreeModuleElement normal_form(const FreeModuleElement& v, const GroebnerBasis& gb) {
  if (v.rank() != gb.rank()) throw DomainError("normal_form: rank mismatch");
  Reducer r(gb.order());
  for (const auto& e : gb.elements()) r.add(&e);
  return from_terms(gb.ring(), gb.rank(), r.reduce(to_terms(v, gb.order())));
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
  if (gb.rank() != 1) throw DomainError("normal_form: polynomial reduced modulo a module of rank != 1");
  return normal_form(FreeModuleElement(std::vector<Polynomial>{p}), gb)[0];
}

bool contains(const GroebnerBasis& gb, const FreeModuleElement& v) { return normal_form(v, gb).is_zero(); }

std::vector<FreeModuleElement> syzygy_basis(const std::vector<FreeModuleElement>& generators, MonomialOrder order) {
  if (generators.empty()) return {};
  const std::size_t r = generators.front().rank();
  const std::size_t k = generators.size();
  RingPtr ring;
  for (const auto& g : generators)
    if (g.ring()) ring = g.ring();
  check_elements(generators, ring, r);

  // Elimination: (g_i, e_i) in Q^{r+k} with the first r components dominant.
  // Basis elements with a lead in the last k components have vanishing first
  // part, and their tails generate the syzygy module.
  std::vector<FreeModuleElement> augmented;
  augmented.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Polynomial> comps = generators[i].components();
    for (std::size_t j = 0; j < k; ++j)
      comps.push_back(Polynomial::constant(ring, i == j ? 1 : 0));
    augmented.emplace_back(std::move(comps));
  }
  GroebnerBasis gb = groebner_basis(ring, r + k, augmented, order);
  std::vector<FreeModuleElement> syz;
  for (const auto& e : gb.elements()) {
    if (e.front().comp < r) continue;
    TermVector tail;
    for (const auto& t : e) tail.push_back({t.comp - r, t.mono, t.coef});
    syz.push_back(from_terms(ring, k, tail));
  }
  return syz;
}

std::optional<std::size_t> FiniteQuotientBasis::index_of(const StandardMonomial& m) const {
  for (std::size_t i = 0; i < standard_monomials.size(); ++i)
    if (standard_monomials[i] == m) return i;
  return std::nullopt;
}

std::optional<FiniteQuotientBasis> quotient_dimension(const GroebnerBasis& gb) {
  const std::size_t n = gb.ring()->size();
  FiniteQuotientBasis out;
  for (std::size_t c = 0; c < gb.rank(); ++c) {
    std::vector<Monomial> leads;
    for (const auto& e : gb.elements())
      if (e.front().comp == c) leads.push_back(e.front().mono);
    bool has_unit = std::any_of(leads.begin(), leads.end(), [](const Monomial& m) { return m.is_one(); });
    if (has_unit) continue;
    // Finite iff each variable has a pure power among the leads.
    std::vector<unsigned> bound(n, 0);
    for (const auto& m : leads) {
      std::size_t support = 0, var = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (m[i] > 0) {
          ++support;
          var = i;
        }
      if (support == 1 && (bound[var] == 0 || m[var] < bound[var])) bound[var] = m[var];
    }
    if (std::any_of(bound.begin(), bound.end(), [](unsigned b) { return b == 0; })) return std::nullopt;

    std::vector<Monomial> staircase;
    Monomial cur(n);
    // Odometer over the box prod [0, bound_i).
    for (;;) {
      bool standard = std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(cur); });
      if (standard) staircase.push_back(cur);
      std::size_t i = 0;
      while (i < n) {
        if (cur[i] + 1 < bound[i]) {
          ++cur[i];
          break;
        }
        cur[i] = 0;
        ++i;
      }
      if (i == n) break;
    }
    std::sort(staircase.begin(), staircase.end(), [&](const Monomial& a, const Monomial& b) {
      return compare_monomials(gb.order().kind, a, b) < 0;
    });
    for (auto& m : staircase) out.standard_monomials.push_back({c, std::move(m)});
  }
  return out;
}

std::vector<Rational> quotient_coordinates(const GroebnerBasis& gb, const FiniteQuotientBasis& basis,
                                           const FreeModuleElement& v) {
  FreeModuleElement nf = normal_form(v, gb);
  std::vector<Rational> coords(basis.dimension());
  for (std::size_t c = 0; c < nf.rank(); ++c) {
    for (const auto& [m, coef] : nf[c].terms()) {
      auto idx = basis.index_of({c, m});
      if (!idx) throw InternalError("normal form term outside the standard-monomial basis");
      coords[*idx] = coef;
    }
  }
  return coords;
}

RationalMatrix multiplication_matrix(const GroebnerBasis& gb, const FiniteQuotientBasis& basis,
                                     const Polynomial& p) {
  const std::size_t d = basis.dimension();
  RationalMatrix m(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& sm = basis.standard_monomials[j];
    FreeModuleElement v(gb.ring(), gb.rank());
    v[sm.component] = p.mul_term(sm.monomial, 1);
    auto coords = quotient_coordinates(gb, basis, v);
    for (std::size_t i = 0; i < d; ++i) m(i, j) = coords[i];
  }
  return m;
}

std::size_t subquotient_dimension(const std::vector<FreeModuleElement>& kernel_generators,
                                  const std::vector<FreeModuleElement>& image_generators, MonomialOrder order) {
  if (kernel_generators.empty()) {
    for (const auto& g : image_generators)
      if (!g.is_zero()) throw DomainError("subquotient: image is not contained in the (zero) kernel");
    return 0;
  }
  const std::size_t r = kernel_generators.front().rank();
  const std::size_t k = kernel_generators.size();
  RingPtr ring;
  for (const auto& g : kernel_generators)
    if (g.ring()) ring = g.ring();
  check_elements(kernel_generators, ring, r);
  check_elements(image_generators, ring, r);

  GroebnerBasis kernel_gb = groebner_basis(ring, r, kernel_generators, order);
  for (std::size_t i = 0; i < image_generators.size(); ++i)
    if (!contains(kernel_gb, image_generators[i]))
      throw DomainError("subquotient: image generator " + std::to_string(i) + " is not in the kernel");

  // Relations c in Q^k with sum c_i K_i in I: syzygies of (K | I) projected
  // to the K coordinates.
  std::vector<FreeModuleElement> all = kernel_generators;
  all.insert(all.end(), image_generators.begin(), image_generators.end());
  std::vector<FreeModuleElement> relations;
  for (const auto& s : syzygy_basis(all, order)) {
    std::vector<Polynomial> head(s.components().begin(), s.components().begin() + static_cast<std::ptrdiff_t>(k));
    FreeModuleElement rel(std::move(head));
    if (!rel.is_zero()) relations.push_back(std::move(rel));
  }
  GroebnerBasis rel_gb = groebner_basis(ring, k, relations, order);
  auto q = quotient_dimension(rel_gb);
  if (!q) throw InfiniteQuotientError("subquotient is not finite-dimensional");
  return q->dimension();
}

bool origin_support_check(const GroebnerBasis& gb) {
  if (gb.rank() != 1) throw DomainError("origin_support_check requires an ideal");
  auto basis = quotient_dimension(gb);
  if (!basis) throw InfiniteQuotientError("origin_support_check: quotient is infinite-dimensional");
  const std::size_t d = basis->dimension();
  if (d == 0) return true;
  for (std::size_t i = 0; i < gb.ring()->size(); ++i) {
    RationalMatrix m = multiplication_matrix(gb, *basis, Polynomial::variable(gb.ring(), i));
    if (!m.pow(static_cast<unsigned>(d)).is_zero()) return false;
  }
  return true;
}

}  // namespace mfres
