#include "mfres/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "mfres/error.hpp"
#include "mfres/forms.hpp"
#include "mfres/hodge.hpp"

namespace mfres::cli {

namespace {

std::string describe(const Json& j) { return j.dump(); }

Polynomial poly_from_json(const Json& j, const RingPtr& ring, const std::string& where) {
  try {
    if (j.is_string()) return parse_polynomial(j.get<std::string>(), ring);
    if (j.is_number_integer()) return Polynomial::constant(ring, Rational(j.dump()));
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected a polynomial string, got " + describe(j));
}

Rational rational_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.dump());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": expected an exact rational (integer or \"p/q\" string), got " + describe(j));
}

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [k, v] : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* allowed) { return k == allowed; }))
      throw ParseError(where + ": unknown field \"" + k + "\"");
  }
}

PolyMatrix matrix_from_json(const Json& j, const RingPtr& ring, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a non-empty list of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  std::vector<Polynomial> entries;
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError(where + ": row " + std::to_string(r + 1) + " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c)
      entries.push_back(
          poly_from_json(j[r][c], ring, where + " entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ")"));
  }
  return PolyMatrix(ring, rows, cols, std::move(entries));
}

Json matrix_to_json(const PolyMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json rational_vector(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json integer_matrix(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& q = m(r, c);
      if (q.get_den() == 1 && q.get_num().fits_slong_p())
        row.push_back(q.get_num().get_si());
      else
        row.push_back(to_string(q));
    }
    rows.push_back(row);
  }
  return rows;
}

Json subspace_to_json(const Subspace& s) {
  Json cols = Json::array();
  for (std::size_t c = 0; c < s.dim(); ++c) cols.push_back(rational_vector(s.basis().column(c)));
  return cols;
}

}  // namespace

// Corpus

bool Corpus::has_factorization(const std::string& name) const {
  return std::any_of(factorizations.begin(), factorizations.end(), [&](const auto& f) { return f.name == name; });
}

MatrixFactorization Corpus::factorization(const std::string& name) const {
  for (const auto& f : factorizations)
    if (f.name == name) return validate_mf(f.data);
  throw ParseError(source + ": unknown factorization \"" + name + "\"");
}

std::vector<MatrixFactorization> Corpus::all_factorizations() const {
  std::vector<MatrixFactorization> out;
  for (const auto& f : factorizations) out.push_back(validate_mf(f.data));
  return out;
}

ModuleSource Corpus::module_source(const std::string& name) const {
  if (has_factorization(name)) return factorization(name);
  for (const auto& m : modules)
    if (m.label == name) return m;
  throw ParseError(source + ": unknown factorization or module \"" + name + "\"");
}

Corpus parse_corpus(const Json& j, const std::string& source) {
  if (!j.is_object()) throw ParseError(source + ": corpus must be a JSON object");
  only_keys(j, {"ring", "potential", "factorizations", "modules", "expectations"}, source);
  Corpus c;
  c.source = source;
  const Json& ring = require(j, "ring", source);
  if (!ring.is_array()) throw ParseError(source + ": \"ring\" must be a list of variable names");
  std::vector<std::string> names;
  for (const auto& v : ring) {
    if (!v.is_string()) throw ParseError(source + ": variable names must be strings, got " + describe(v));
    names.push_back(v.get<std::string>());
  }
  try {
    c.ring = make_ring(names);
  } catch (const Error& e) {
    throw ParseError(source + ": ring: " + e.what());
  }
  c.potential = poly_from_json(require(j, "potential", source), c.ring, source + ": potential");

  if (j.contains("factorizations")) {
    const Json& fs = j.at("factorizations");
    if (!fs.is_object()) throw ParseError(source + ": \"factorizations\" must be an object");
    for (const auto& [name, body] : fs.items()) {
      const std::string where = source + ": factorization \"" + name + "\"";
      only_keys(body, {"A", "B"}, where);
      FactorizationData d{c.potential, matrix_from_json(require(body, "A", where), c.ring, where + " A"),
                          matrix_from_json(require(body, "B", where), c.ring, where + " B"), name};
      if (!d.a.is_square() || !d.b.is_square() || d.a.rows() != d.b.rows())
        throw ParseError(where + ": A and B must be square of the same size");
      c.factorizations.push_back({name, std::move(d)});
    }
  }

  if (j.contains("modules")) {
    const Json& ms = j.at("modules");
    if (!ms.is_object()) throw ParseError(source + ": \"modules\" must be an object");
    for (const auto& [name, body] : ms.items()) {
      const std::string where = source + ": module \"" + name + "\"";
      only_keys(body, {"rank", "relations", "over"}, where);
      if (c.has_factorization(name)) throw ParseError(where + ": name already used by a factorization");
      const Json& rank = require(body, "rank", where);
      if (!rank.is_number_unsigned() || rank.get<std::size_t>() == 0)
        throw ParseError(where + ": rank must be a positive integer");
      ModulePresentation m;
      m.potential = c.potential;
      m.rank = rank.get<std::size_t>();
      m.label = name;
      m.over = PresentationBase::R;
      if (body.contains("over")) {
        const Json& over = body.at("over");
        if (over == "Q")
          m.over = PresentationBase::Q;
        else if (over != "R")
          throw ParseError(where + ": \"over\" must be \"R\" or \"Q\"");
      }
      const Json& rels = require(body, "relations", where);
      if (!rels.is_array()) throw ParseError(where + ": relations must be a list of columns");
      for (std::size_t k = 0; k < rels.size(); ++k) {
        const Json& col = rels[k];
        const std::string cw = where + " relation " + std::to_string(k + 1);
        if (!col.is_array() || col.size() != m.rank)
          throw ParseError(cw + ": expected a column of length " + std::to_string(m.rank));
        std::vector<Polynomial> comps;
        for (std::size_t i = 0; i < m.rank; ++i)
          comps.push_back(poly_from_json(col[i], c.ring, cw + " entry " + std::to_string(i + 1)));
        m.relations.emplace_back(std::move(comps));
      }
      c.modules.push_back(std::move(m));
    }
  }

  if (j.contains("expectations")) {
    if (!j.at("expectations").is_object()) throw ParseError(source + ": \"expectations\" must be an object");
    c.expectations = j.at("expectations");
  }
  return c;
}

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": invalid JSON: " + e.what());
  }
}

Corpus load_corpus(const std::filesystem::path& path) {
  return parse_corpus(load_json(path), path.filename().string());
}

Json corpus_to_json(const Corpus& c) {
  Json j;
  Json ring = Json::array();
  for (std::size_t i = 0; i < c.ring->size(); ++i) ring.push_back(c.ring->name(i));
  j["ring"] = ring;
  j["potential"] = c.potential.to_string();
  if (!c.factorizations.empty()) {
    Json fs = Json::object();
    for (const auto& f : c.factorizations) fs[f.name] = Json{{"A", matrix_to_json(f.data.a)}, {"B", matrix_to_json(f.data.b)}};
    j["factorizations"] = fs;
  }
  if (!c.modules.empty()) {
    Json ms = Json::object();
    for (const auto& m : c.modules) {
      Json rels = Json::array();
      for (const auto& r : m.relations) {
        Json col = Json::array();
        for (const auto& p : r.components()) col.push_back(p.to_string());
        rels.push_back(col);
      }
      ms[m.label] = Json{{"rank", m.rank}, {"relations", rels}, {"over", m.over == PresentationBase::R ? "R" : "Q"}};
    }
    j["modules"] = ms;
  }
  if (!c.expectations.is_null()) j["expectations"] = c.expectations;
  return j;
}

// Selftest

namespace {

long as_long(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer, got " + describe(j));
  return j.get<long>();
}

std::string pair_name(const std::string& what, const std::string& l, const std::string& r) {
  return what + "(" + l + "," + r + ")";
}

std::vector<std::pair<std::string, std::string>> named_pairs(const Corpus& c, const Json& want,
                                                             const std::string& where) {
  std::vector<std::pair<std::string, std::string>> out;
  if (want == "all") {
    for (const auto& a : c.factorizations)
      for (const auto& b : c.factorizations) out.emplace_back(a.name, b.name);
    return out;
  }
  if (!want.is_array()) throw ParseError(where + ": expected \"all\" or a list of [left, right] pairs");
  for (const auto& p : want) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw ParseError(where + ": bad pair " + describe(p));
    out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

std::string left_of(const Json& e, const std::string& where) {
  const Json& l = require(e, "left", where);
  if (!l.is_string()) throw ParseError(where + ": left must be a name");
  return l.get<std::string>();
}

std::string right_of(const Json& e, const std::string& where) {
  const Json& r = require(e, "right", where);
  if (!r.is_string()) throw ParseError(where + ": right must be a name");
  return r.get<std::string>();
}

std::vector<std::string> names_of(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a list of names");
  std::vector<std::string> out;
  for (const auto& n : j) {
    if (!n.is_string()) throw ParseError(where + ": expected a name, got " + describe(n));
    out.push_back(n.get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<SelftestItem> selftest_corpus(const Corpus& c, MonomialOrder order, unsigned threads) {
  std::vector<SelftestItem> items;
  if (c.expectations.is_null()) return items;

  auto run_check = [&](const std::string& check, const Json& expected, const std::function<Json()>& compute) {
    SelftestItem item{c.source, check, expected, nullptr, false};
    try {
      item.actual = compute();
      item.pass = item.actual == expected;
    } catch (const Error& e) {
      item.actual = std::string("error: ") + e.what();
    }
    items.push_back(std::move(item));
  };

  std::optional<ResidueFunctional> rf;
  auto residue = [&]() -> const ResidueFunctional& {
    if (!rf) rf.emplace(MilnorAlgebra(c.potential, order));
    return *rf;
  };

  for (const auto& [key, want] : c.expectations.items()) {
    const std::string where = c.source + ": expectations." + key;
    if (key == "mu") {
      run_check("mu", want, [&] { return Json(MilnorAlgebra(c.potential, order).milnor_number()); });
    } else if (key == "chi" || key == "theta" || key == "herbrand" || key == "residue") {
      if (!want.is_array()) throw ParseError(where + ": expected a list");
      for (const auto& e : want) {
        const std::string l = left_of(e, where), r = right_of(e, where);
        const Json& value = require(e, "value", where);
        run_check(pair_name(key, l, r), value, [&, l, r]() -> Json {
          if (key == "chi") return euler_pairing(c.factorization(l), c.factorization(r), order);
          if (key == "herbrand") return herbrand_difference(c.factorization(l), c.factorization(r), order);
          if (key == "theta") return hochster_theta(c.module_source(l), c.module_source(r), order);
          return to_string(residue_pairing(residue(), chern_character_form(c.factorization(l)),
                                           chern_character_form(c.factorization(r))));
        });
      }
    } else if (key == "hrr") {
      for (const auto& [l, r] : named_pairs(c, want, where))
        run_check(pair_name("hrr", l, r), true, [&, l, r]() -> Json {
          return hrr_check(c.factorization(l), c.factorization(r), residue(), order).equal;
        });
    } else if (key == "gram_psd") {
      if (!want.is_array()) throw ParseError(where + ": expected a list");
      for (const auto& e : want) {
        const PairingKind kind = parse_pairing_kind(require(e, "pairing", where).get<std::string>());
        const std::vector<std::string> names = names_of(require(e, "items", where), where);
        Json expected = Json::object();
        expected["psd"] = require(e, "psd", where);
        if (e.contains("matrix")) expected["matrix"] = e.at("matrix");
        if (e.contains("kernel")) expected["kernel"] = e.at("kernel");
        std::string label = "gram_psd[" + to_string(kind);
        for (const auto& n : names) label += " " + n;
        run_check(label + "]", expected, [&, kind, names, e]() -> Json {
          std::vector<ModuleSource> sources;
          for (const auto& n : names) sources.push_back(c.module_source(n));
          GramMatrix g = gram_matrix(sources, kind, order, threads);
          PsdReport p = is_positive_semidefinite(g);
          Json actual = Json::object();
          actual["psd"] = p.psd;
          if (e.contains("matrix")) actual["matrix"] = integer_matrix(g.entries);
          if (e.contains("kernel")) {
            Json k = Json::array();
            for (const auto& v : p.kernel_basis) k.push_back(rational_vector(v));
            actual["kernel"] = k;
          }
          return actual;
        });
      }
    } else if (key == "theta_vanishes") {
      const std::vector<std::string> names = names_of(want, where);
      for (const auto& l : names)
        for (const auto& r : names)
          run_check(pair_name("theta", l, r), 0,
                    [&, l, r]() -> Json { return hochster_theta(c.module_source(l), c.module_source(r), order); });
    } else if (key == "lemma") {
      std::vector<std::pair<std::string, long>> jobs;
      if (want == "all") {
        const long top = static_cast<long>(c.ring->size()) / 2;
        for (const auto& f : c.factorizations)
          for (long j = 1; j <= top; ++j) jobs.emplace_back(f.name, j);
      } else {
        if (!want.is_array()) throw ParseError(where + ": expected \"all\" or a list");
        for (const auto& e : want) {
          const Json& name = require(e, "factorization", where);
          if (!name.is_string()) throw ParseError(where + ": factorization must be a name");
          jobs.emplace_back(name.get<std::string>(), as_long(require(e, "j", where), where));
        }
      }
      for (const auto& [name, j] : jobs)
        run_check("lemma(" + name + ",j=" + std::to_string(j) + ")", true, [&, name, j]() -> Json {
          if (j <= 0) throw DomainError("j must be positive");
          return euler_lemma_check(c.factorization(name), static_cast<unsigned>(j));
        });
    } else {
      throw ParseError(where + ": unknown expectation kind");
    }
  }
  return items;
}

std::vector<SelftestItem> selftest_directory(const std::filesystem::path& dir, MonomialOrder order, unsigned threads) {
  if (!std::filesystem::is_directory(dir)) throw ParseError("selftest: no such directory " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<SelftestItem> items;
  for (const auto& f : files) {
    std::vector<SelftestItem> part;
    try {
      part = selftest_corpus(load_corpus(f), order, threads);
    } catch (const Error& e) {
      part = {SelftestItem{f.filename().string(), "load", "ok", std::string("error: ") + e.what(), false}};
    }
    items.insert(items.end(), part.begin(), part.end());
  }
  return items;
}

// Command line

namespace {

struct Options {
  std::string format = "json";
  std::string order = "degrevlex";
  unsigned threads = 1;
  std::string file;
  std::string left;
  std::string right;
  std::string mf;
  std::string pairing = "euler";
  std::string items;
  std::string matrix;
  long center = -1;
  long j = 0;
  std::string dir = "corpus";
};

MonomialOrder order_of(const Options& o) {
  return MonomialOrder{o.order == "lex" ? OrderKind::lex : OrderKind::degrevlex};
}

std::vector<std::string> split_items(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

void render_text(const Json& j, std::ostream& out, const std::string& indent) {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out << indent << k << ":\n";
      render_text(v, out, indent + "  ");
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << indent << k << ":\n";
      for (const auto& e : v) {
        out << indent << "  -\n";
        render_text(e, out, indent + "    ");
      }
    } else {
      out << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void emit(const Json& report, const Options& o, std::ostream& out) {
  if (o.format == "text")
    render_text(report, out, "");
  else
    out << report.dump(2) << "\n";
}

Json pairing_results(const Corpus& c, const std::string& command, const Options& o) {
  const MonomialOrder order = order_of(o);
  if (o.left.empty() || o.right.empty()) throw ParseError(command + ": --left and --right are required");
  Json r = Json::object();
  r["left"] = o.left;
  r["right"] = o.right;
  if (command == "euler") {
    HomologyDimensions h = homology_dimensions(hom_complex(c.factorization(o.left), c.factorization(o.right)), order);
    r["h_even"] = h.even;
    r["h_odd"] = h.odd;
    r["chi"] = static_cast<long>(h.even) - static_cast<long>(h.odd);
  } else if (command == "herbrand") {
    r["h"] = herbrand_difference(c.factorization(o.left), c.factorization(o.right), order);
  } else if (command == "theta") {
    r["theta"] = hochster_theta(c.module_source(o.left), c.module_source(o.right), order);
  } else if (command == "residue") {
    ResidueFunctional rf(MilnorAlgebra(c.potential, order));
    r["value"] = to_string(residue_pairing(rf, chern_character_form(c.factorization(o.left)),
                                           chern_character_form(c.factorization(o.right))));
  } else if (command == "hrr") {
    ResidueFunctional rf(MilnorAlgebra(c.potential, order));
    HrrReport h = hrr_check(c.factorization(o.left), c.factorization(o.right), rf, order);
    r["chi"] = h.chi;
    r["residue_side"] = to_string(h.residue_side);
    r["sign"] = h.sign;
    r["equal"] = h.equal;
  }
  return r;
}

Json command_results(const std::string& command, const Options& o, bool& failed) {
  const MonomialOrder order = order_of(o);
  if (command == "weight-filtration") {
    Json mj = load_json(o.matrix);
    if (mj.is_object() && mj.contains("matrix")) mj = mj.at("matrix");
    if (!mj.is_array() || mj.empty()) throw ParseError(o.matrix + ": expected a square list of rows");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t r = 0; r < mj.size(); ++r) {
      if (!mj[r].is_array()) throw ParseError(o.matrix + ": row " + std::to_string(r + 1) + " is not a list");
      std::vector<Rational> row;
      for (std::size_t k = 0; k < mj[r].size(); ++k)
        row.push_back(rational_from_json(mj[r][k], o.matrix + " entry (" + std::to_string(r + 1) + "," +
                                                       std::to_string(k + 1) + ")"));
      if (row.size() != mj.size()) throw ParseError(o.matrix + ": matrix is not square");
      rows.push_back(std::move(row));
    }
    if (o.center < 0) throw ParseError("weight-filtration: --center must be a non-negative integer");
    NilpotentOperator op(RationalMatrix::from_rows(rows), static_cast<unsigned>(o.center));
    WeightFiltration wf = weight_filtration(op);
    WeightAxiomReport axioms = verify_weight_axioms(op, wf);
    Json r = Json::object();
    r["dimension"] = op.dimension();
    r["center"] = o.center;
    Json levels = Json::array();
    for (long j = -1; j <= 2 * o.center; ++j) levels.push_back(Json{{"index", j}, {"basis", subspace_to_json(wf.W(j))}});
    r["filtration"] = levels;
    r["graded_dimensions"] = graded_dimensions(wf);
    Json prim = Json::array();
    for (long l = 0; l <= o.center; ++l) prim.push_back(primitive_subspace(op, wf, l).cols());
    r["primitive_dimensions"] = prim;
    r["axioms"] = Json{{"shift_ok", axioms.shift_ok}, {"iso_ok", axioms.iso_ok}};
    return r;
  }
  if (command == "psd") {
    Json g = load_json(o.file);
    if (g.is_object() && g.contains("results")) g = g.at("results");
    std::vector<std::string> labels;
    if (g.is_object() && g.contains("labels")) labels = names_of(g.at("labels"), o.file);
    if (g.is_object() && g.contains("matrix")) g = g.at("matrix");
    if (!g.is_array()) throw ParseError(o.file + ": no Gram matrix found");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t r = 0; r < g.size(); ++r) {
      if (!g[r].is_array() || g[r].size() != g.size()) throw ParseError(o.file + ": Gram matrix is not square");
      std::vector<Rational> row;
      for (std::size_t k = 0; k < g[r].size(); ++k)
        row.push_back(rational_from_json(g[r][k], o.file + " entry (" + std::to_string(r + 1) + "," +
                                                      std::to_string(k + 1) + ")"));
      rows.push_back(std::move(row));
    }
    PsdReport p = is_positive_semidefinite(RationalMatrix::from_rows(rows));
    Json r = Json::object();
    if (!labels.empty()) r["labels"] = labels;
    r["psd"] = p.psd;
    r["rank"] = p.rank;
    Json k = Json::array();
    for (const auto& v : p.kernel_basis) k.push_back(rational_vector(v));
    r["kernel"] = k;
    return r;
  }
  if (command == "selftest") {
    std::vector<SelftestItem> items = selftest_directory(o.dir, order, o.threads);
    std::size_t passed = 0;
    Json list = Json::array();
    for (const auto& it : items) {
      passed += it.pass ? 1 : 0;
      list.push_back(Json{{"file", it.file}, {"check", it.check}, {"expected", it.expected}, {"actual", it.actual},
                          {"pass", it.pass}});
    }
    Json r = Json::object();
    r["checks"] = items.size();
    r["passed"] = passed;
    r["failed"] = items.size() - passed;
    if (items.empty()) r["warning"] = "0 checks";
    r["items"] = list;
    failed = passed != items.size();
    return r;
  }

  Corpus c = load_corpus(o.file);
  if (command == "validate") {
    Json r = Json::object();
    r["potential"] = c.potential.to_string();
    Json fs = Json::object();
    for (const auto& f : c.factorizations) {
      MatrixFactorization mf = validate_mf(f.data);
      fs[f.name] = Json{{"rank", mf.size()}, {"valid", true}};
    }
    r["factorizations"] = fs;
    Json ms = Json::array();
    for (const auto& m : c.modules) ms.push_back(m.label);
    r["modules"] = ms;
    return r;
  }
  if (command == "milnor") {
    MilnorAlgebra alg(c.potential, order);
    Json basis = Json::array();
    for (const auto& p : alg.basis_polynomials()) basis.push_back(p.to_string());
    Json r = Json::object();
    r["mu"] = alg.milnor_number();
    r["basis"] = basis;
    return r;
  }
  if (command == "chern") {
    MilnorAlgebra alg(c.potential, order);
    Json basis = Json::array();
    for (const auto& p : alg.basis_polynomials()) basis.push_back(p.to_string());
    Json r = Json::object();
    r["basis"] = basis;
    Json fs = Json::object();
    for (const auto& f : c.factorizations) {
      if (!o.mf.empty() && f.name != o.mf) continue;
      MatrixFactorization mf = validate_mf(f.data);
      fs[f.name] = Json{{"form", chern_character_form(mf).to_string()},
                        {"milnor_class", rational_vector(chern_milnor_class(mf, alg))}};
    }
    if (!o.mf.empty() && fs.empty()) throw ParseError(c.source + ": unknown factorization \"" + o.mf + "\"");
    r["factorizations"] = fs;
    return r;
  }
  if (command == "gram") {
    std::vector<std::string> names = split_items(o.items);
    if (names.empty()) {
      const PairingKind kind = parse_pairing_kind(o.pairing);
      for (const auto& f : c.factorizations) names.push_back(f.name);
      if (kind != PairingKind::euler)
        for (const auto& m : c.modules) names.push_back(m.label);
    }
    std::vector<ModuleSource> sources;
    for (const auto& n : names) sources.push_back(c.module_source(n));
    GramMatrix g = gram_matrix(sources, parse_pairing_kind(o.pairing), order, o.threads);
    Json r = Json::object();
    r["pairing"] = o.pairing;
    r["labels"] = g.labels;
    r["matrix"] = integer_matrix(g.entries);
    r["symmetric"] = g.symmetric();
    return r;
  }
  if (command == "lemma-check") {
    std::vector<std::pair<std::string, long>> jobs;
    const long top = static_cast<long>(c.ring->size()) / 2;
    if (o.j < 0) throw ParseError("lemma-check: --j must be positive");
    for (const auto& f : c.factorizations) {
      if (!o.mf.empty() && f.name != o.mf) continue;
      if (o.j > 0)
        jobs.emplace_back(f.name, o.j);
      else
        for (long j = 1; j <= top; ++j) jobs.emplace_back(f.name, j);
    }
    if (!o.mf.empty() && jobs.empty() && !c.has_factorization(o.mf))
      throw ParseError(c.source + ": unknown factorization \"" + o.mf + "\"");
    Json list = Json::array();
    bool all = true;
    for (const auto& [name, j] : jobs) {
      const bool ok = euler_lemma_check(c.factorization(name), static_cast<unsigned>(j));
      all = all && ok;
      list.push_back(Json{{"factorization", name}, {"j", j}, {"equal", ok}});
    }
    Json r = Json::object();
    r["checks"] = list;
    r["all_equal"] = all;
    return r;
  }
  return pairing_results(c, command, o);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mfres: exact computations with matrix factorizations", "mfres"};
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--order", o.order, "Monomial order")->check(CLI::IsMember({"degrevlex", "lex"}));
  app.add_option("--threads", o.threads, "Worker threads for Gram entries")->check(CLI::Range(1u, 256u));
  app.require_subcommand(1);

  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto with_file = [&](CLI::App* s) { s->add_option("file", o.file, "Corpus JSON file")->required(); };
  auto with_pair = [&](CLI::App* s) {
    with_file(s);
    s->add_option("--left", o.left, "Left name")->required();
    s->add_option("--right", o.right, "Right name")->required();
  };

  with_file(sub("validate", "Check AB = BA = f I for every factorization"));
  with_file(sub("milnor", "Milnor number and standard-monomial basis"));
  CLI::App* chern = sub("chern", "Chern character form and its Milnor class");
  with_file(chern);
  chern->add_option("--mf", o.mf, "Only this factorization");
  with_pair(sub("residue", "Residue pairing of two Chern character forms"));
  with_pair(sub("euler", "Euler pairing"));
  with_pair(sub("theta", "Hochster theta pairing"));
  with_pair(sub("herbrand", "Herbrand difference"));
  with_pair(sub("hrr", "Compare chi with the residue side"));
  CLI::App* gram = sub("gram", "Gram matrix of a pairing");
  with_file(gram);
  gram->add_option("--pairing", o.pairing, "euler, theta or signed_theta")
      ->check(CLI::IsMember({"euler", "theta", "signed_theta"}));
  gram->add_option("--items", o.items, "Comma-separated names (default: all)");
  CLI::App* psd = sub("psd", "Exact PSD test of a Gram report");
  psd->add_option("file", o.file, "Gram report or matrix JSON")->required();
  CLI::App* wf = sub("weight-filtration", "Weight filtration of a nilpotent matrix");
  wf->add_option("--matrix", o.matrix, "Matrix JSON")->required();
  wf->add_option("--center", o.center, "Center m")->required();
  CLI::App* lemma = sub("lemma-check", "f tr((dA dB)^j) = j df ^ tr(A dB (dA dB)^{j-1})");
  with_file(lemma);
  lemma->add_option("--j", o.j, "Exponent (default: all admissible)");
  lemma->add_option("--mf", o.mf, "Only this factorization");
  CLI::App* self = sub("selftest", "Check every expectation in a corpus directory");
  self->add_option("dir", o.dir, "Corpus directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "mfres: " << e.what() << "\n";
    Json report{{"command", args.empty() ? "" : args.front()}, {"status", "error"}, {"message", e.what()}};
    out << report.dump(2) << "\n";
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Json report = Json::object();
  report["command"] = command;
  report["args"] = args;
  int code = 0;
  try {
    bool failed = false;
    Json results = command_results(command, o, failed);
    report["status"] = failed ? "error" : "ok";
    if (failed) report["message"] = "selftest: some checks failed";
    report["results"] = results;
    code = failed ? 1 : 0;
  } catch (const ParseError& e) {
    report["status"] = "error";
    report["message"] = e.what();
    code = 2;
  } catch (const nlohmann::json::exception& e) {
    report["status"] = "error";
    report["message"] = std::string("malformed JSON input: ") + e.what();
    code = 2;
  } catch (const Error& e) {
    report["status"] = "error";
    report["message"] = e.what();
    code = 1;
  }
  if (code != 0) err << "mfres " << command << ": " << report["message"].get<std::string>() << "\n";
  emit(report, o, out);
  return code;
}

}  // namespace mfres::cli
