#include "support.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace testing_support {

Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(s, r); }

PolyMatrix mat(const RingPtr& r, std::size_t n, const std::vector<std::string>& entries) {
  std::vector<Polynomial> ps;
  for (const auto& e : entries) ps.push_back(P(r, e));
  return PolyMatrix(r, n, entries.size() / n, ps);
}

MatrixFactorization make_mf(const Polynomial& f, const PolyMatrix& a, const PolyMatrix& b, const std::string& label) {
  return validate_mf(FactorizationData{f, a, b, label});
}

MatrixFactorization make_mf(const RingPtr& r, const std::string& f, std::size_t n, const std::vector<std::string>& a,
                            const std::vector<std::string>& b, const std::string& label) {
  return make_mf(P(r, f), mat(r, n, a), mat(r, n, b), label);
}

ModulePresentation cyclic_module(const Polynomial& f, const std::vector<std::string>& gens, const std::string& label) {
  ModulePresentation m;
  m.potential = f;
  m.rank = 1;
  m.label = label;
  for (const auto& g : gens) m.relations.emplace_back(std::vector<Polynomial>{P(f.ring(), g)});
  return m;
}

Polynomial random_poly(const RingPtr& r, std::mt19937& rng, unsigned max_degree, std::size_t terms, int coef_range,
                       bool allow_constant) {
  std::uniform_int_distribution<unsigned> var(0, static_cast<unsigned>(r->size() - 1));
  std::uniform_int_distribution<unsigned> deg(allow_constant ? 0 : 1, max_degree);
  std::uniform_int_distribution<int> coef(-coef_range, coef_range);
  Polynomial p = Polynomial::zero(r);
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial m(r->size());
    unsigned d = deg(rng);
    for (unsigned k = 0; k < d; ++k) m[var(rng)] += 1;
    int c = coef(rng);
    if (c == 0) c = 1;
    p += Polynomial::monomial(r, m, c);
  }
  return p;
}

PolyMatrix random_matrix(const RingPtr& r, std::mt19937& rng, std::size_t n, unsigned max_degree, std::size_t terms) {
  std::vector<Polynomial> e;
  for (std::size_t i = 0; i < n * n; ++i) e.push_back(random_poly(r, rng, max_degree, terms, 3));
  return PolyMatrix(r, n, n, e);
}

DifferentialForm random_form(const RingPtr& r, std::mt19937& rng, unsigned degree) {
  const std::size_t n = r->size();
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  DifferentialForm acc(r, degree);
  for (int t = 0; t < 3; ++t) {
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<std::size_t> pick(idx.begin(), idx.begin() + degree);
    acc += DifferentialForm::basis(r, pick, random_poly(r, rng, 3, 3, 4));
  }
  return acc;
}

std::optional<MatrixFactorization> random_adjugate_mf(const RingPtr& r, std::mt19937& rng, std::size_t n,
                                                       unsigned max_degree) {
  std::vector<Polynomial> e;
  for (std::size_t i = 0; i < n * n; ++i) e.push_back(random_poly(r, rng, max_degree, 2, 3, false));
  PolyMatrix a(r, n, n, e);
  Polynomial f = a.determinant();
  if (f.is_zero()) return std::nullopt;
  return make_mf(f, a, a.adjugate(), "random");
}

std::size_t linear_substitution_length(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != 2) throw std::invalid_argument("oracle needs two variables");
  Rational c[2] = {0, 0};
  for (const auto& [m, coef] : a.terms()) {
    if (m.degree() != 1) throw std::invalid_argument("oracle needs a linear form");
    c[m[0] == 1 ? 0 : 1] = coef;
  }
  const std::size_t k = c[0] != 0 ? 0 : 1, o = 1 - k;
  const Rational ratio = -c[o] / c[k];  // x_k = ratio * x_o
  std::map<unsigned, Rational> uni;
  for (const auto& [m, coef] : b.terms()) {
    Rational v = coef;
    for (unsigned e = 0; e < m[k]; ++e) v *= ratio;
    uni[m[k] + m[o]] += v;
  }
  long top = -1;
  for (const auto& [e, v] : uni)
    if (v != 0) top = std::max<long>(top, e);
  if (top < 0) throw std::invalid_argument("b vanishes on a = 0: infinite length");
  return static_cast<std::size_t>(top);
}

long rank_one_chi_oracle(const MatrixFactorization& mf) {
  if (mf.size() != 1) throw std::invalid_argument("rank one only");
  const Polynomial& a = mf.a()(0, 0);
  const Polynomial& b = mf.b()(0, 0);
  if (a.total_degree() == 1) return static_cast<long>(linear_substitution_length(a, b));
  return static_cast<long>(linear_substitution_length(b, a));
}

std::optional<std::size_t> separable_milnor_oracle(const Polynomial& f) {
  std::set<std::size_t> used;
  std::size_t mu = 1;
  for (const auto& p : jacobian_generators(f)) {
    std::optional<std::size_t> var;
    unsigned degree = 0;
    for (const auto& [m, c] : p.terms())
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (var && *var != i) return std::nullopt;
        var = i;
        degree = std::max(degree, m[i]);
      }
    if (!var || used.count(*var)) return std::nullopt;
    used.insert(*var);
    mu *= degree;
  }
  return mu;
}

namespace {

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  Monomial m(nvars);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == nvars) {
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m[i] = e;
      rec(i + 1, left - e);
    }
    m[i] = 0;
  };
  rec(0, degree);
  return out;
}

// Solve sum_j a_j g_j = target with deg a_j <= bound; nullopt if inconsistent.
std::optional<std::vector<Polynomial>> solve_combination(const std::vector<Polynomial>& g, const Polynomial& target,
                                                         unsigned bound) {
  const RingPtr& r = target.ring();
  std::vector<Monomial> mons = monomials_up_to(r->size(), bound);
  std::map<Monomial, std::size_t> rows;
  auto row_of = [&](const Monomial& m) {
    auto it = rows.find(m);
    if (it != rows.end()) return it->second;
    std::size_t k = rows.size();
    rows.emplace(m, k);
    return k;
  };
  std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
  const std::size_t unknowns = g.size() * mons.size();
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t u = 0; u < mons.size(); ++u)
      for (const auto& [m, c] : g[j].terms()) entries.emplace_back(row_of(m * mons[u]), j * mons.size() + u, c);
  std::vector<std::pair<std::size_t, Rational>> rhs;
  for (const auto& [m, c] : target.terms()) rhs.emplace_back(row_of(m), c);
  RationalMatrix sys(rows.size(), unknowns + 1);
  for (const auto& [row, col, c] : entries) sys(row, col) += c;
  for (const auto& [row, c] : rhs) sys(row, unknowns) = c;
  std::vector<std::size_t> pivots;
  RationalMatrix red = sys.rref(&pivots);
  if (!pivots.empty() && pivots.back() == unknowns) return std::nullopt;
  std::vector<Polynomial> a(g.size(), Polynomial::zero(r));
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    const std::size_t col = pivots[k];
    const Rational& v = red(k, unknowns);
    if (v == 0) continue;
    a[col / mons.size()] += Polynomial::monomial(r, mons[col % mons.size()], v);
  }
  return a;
}

}  // namespace

std::optional<Rational> transformation_law_residue(const Polynomial& f, const Polynomial& g, unsigned max_power) {
  const RingPtr& r = f.ring();
  const std::size_t n = r->size();
  std::vector<Polynomial> jac = jacobian_generators(f);
  for (unsigned power = 1; power <= max_power; ++power) {
    std::vector<Polynomial> entries;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      auto a = solve_combination(jac, Polynomial::monomial(r, Monomial::variable(n, i, power), 1), power);
      if (!a) {
        ok = false;
        break;
      }
      entries.insert(entries.end(), a->begin(), a->end());
    }
    if (!ok) continue;
    PolyMatrix a(r, n, n, entries);
    Polynomial h = g * a.determinant();
    return h.coefficient(Monomial(std::vector<unsigned>(n, power - 1)));
  }
  return std::nullopt;
}

RationalMatrix jordan_matrix(const std::vector<unsigned>& blocks) {
  std::size_t d = 0;
  for (unsigned s : blocks) d += s;
  RationalMatrix n(d, d);
  std::size_t start = 0;
  for (unsigned s : blocks) {
    for (unsigned k = 0; k + 1 < s; ++k) n(start + k, start + k + 1) = 1;
    start += s;
  }
  return n;
}

RationalMatrix inverse(const RationalMatrix& m) {
  const std::size_t d = m.rows();
  RationalMatrix red = m.hconcat(RationalMatrix::identity(d)).rref();
  return red.column_range(d, 2 * d);
}

RationalMatrix random_similar(const RationalMatrix& n, std::mt19937& rng) {
  const std::size_t d = n.rows();
  std::uniform_int_distribution<int> c(-2, 2);
  RationalMatrix l = RationalMatrix::identity(d), u = RationalMatrix::identity(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      l(i, j) = c(rng);
      u(j, i) = c(rng);
    }
  RationalMatrix p = l * u;
  return p * n * inverse(p);
}

std::vector<unsigned> random_blocks(std::mt19937& rng, unsigned max_dim) {
  std::uniform_int_distribution<unsigned> total(1, max_dim);
  unsigned left = total(rng);
  std::vector<unsigned> blocks;
  while (left > 0) {
    std::uniform_int_distribution<unsigned> s(1, left);
    unsigned b = s(rng);
    blocks.push_back(b);
    left -= b;
  }
  return blocks;
}

std::vector<std::size_t> sl2_graded_dimensions(const std::vector<unsigned>& blocks, unsigned center) {
  std::vector<std::size_t> dims(2 * center + 1, 0);
  for (unsigned s : blocks)
    for (unsigned t = 0; t < s; ++t) dims[center - (s - 1) + 2 * t] += 1;
  return dims;
}

UniquenessResult brute_force_weight_filtrations(const NilpotentOperator& op, const WeightFiltration& expected) {
  const std::size_t d = op.dimension();
  const long m = op.center();
  const RationalMatrix& n = op.matrix();
  std::vector<Subspace> pieces;
  auto add_unique = [](std::vector<Subspace>& v, const Subspace& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) {
      v.push_back(s);
      return true;
    }
    return false;
  };
  for (unsigned a = 0; a <= d; ++a)
    for (unsigned b = 0; b <= d; ++b)
      add_unique(pieces, Subspace::kernel(n.pow(a)).intersect(Subspace::image(n.pow(b))));
  std::vector<Subspace> sums = pieces;
  for (bool grew = true; grew;) {
    grew = false;
    const std::size_t count = sums.size();
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i + 1; j < count; ++j) grew = add_unique(sums, sums[i] + sums[j]) || grew;
  }

  UniquenessResult result;
  const std::size_t levels = 2 * static_cast<std::size_t>(m) + 2;
  std::vector<Subspace> chain(levels);
  chain[0] = Subspace::zero(d);
  chain[levels - 1] = Subspace::full(d);
  // chain[k] = W_{k-1}
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == levels - 1) {
      if (!chain[k].contains(chain[k - 1])) return;
      WeightFiltration wf(op.center(), chain);
      WeightAxiomReport r = verify_weight_axioms(op, wf);
      if (r.shift_ok && r.iso_ok) {
        ++result.passing;
        result.matches = wf == expected;
      }
      return;
    }
    for (const auto& s : sums) {
      if (!s.contains(chain[k - 1])) continue;
      if (k >= 2 && !chain[k - 2].contains(s.image_under(n))) continue;
      chain[k] = s;
      rec(k + 1);
    }
  };
  if (levels == 2) {
    WeightFiltration wf(op.center(), chain);
    WeightAxiomReport r = verify_weight_axioms(op, wf);
    result.passing = r.shift_ok && r.iso_ok ? 1 : 0;
    result.matches = result.passing == 1 && wf == expected;
  } else {
    rec(1);
  }
  return result;
}

std::optional<RationalMatrix> random_intertwiner(const RationalMatrix& n, const RationalMatrix& n2, std::mt19937& rng) {
  const std::size_t d = n.rows(), d2 = n2.rows();
  // unknown g(r, c) at index r * d + c
  RationalMatrix sys(d2 * d, d2 * d);
  for (std::size_t r = 0; r < d2; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const std::size_t eq = r * d + c;
      for (std::size_t k = 0; k < d; ++k) sys(eq, r * d + k) += n(k, c);
      for (std::size_t k = 0; k < d2; ++k) sys(eq, k * d + c) -= n2(r, k);
    }
  RationalMatrix null = sys.nullspace();
  if (null.cols() == 0) return std::nullopt;
  std::uniform_int_distribution<int> c(-3, 3);
  RationalMatrix g(d2, d);
  for (std::size_t b = 0; b < null.cols(); ++b) {
    const Rational w = c(rng);
    for (std::size_t i = 0; i < d2 * d; ++i) g(i / d, i % d) += w * null(i, b);
  }
  return g;
}

}  // namespace testing_support
