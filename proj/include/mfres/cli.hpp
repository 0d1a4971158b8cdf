#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "mfres/mf.hpp"
#include "mfres/pairings.hpp"

namespace mfres::cli {

using Json = nlohmann::ordered_json;

struct NamedFactorization {
  std::string name;
  FactorizationData data;
};

// One corpus file: a potential, named factorizations and module
// presentations, and optional expected values for selftest.
struct Corpus {
  std::string source;
  RingPtr ring;
  Polynomial potential;
  std::vector<NamedFactorization> factorizations;
  std::vector<ModulePresentation> modules;
  Json expectations;

  bool has_factorization(const std::string& name) const;
  // Validated on every call; throws InvalidFactorizationError.
  MatrixFactorization factorization(const std::string& name) const;
  std::vector<MatrixFactorization> all_factorizations() const;
  // Factorization names win over module names.
  ModuleSource module_source(const std::string& name) const;
};

Corpus parse_corpus(const Json& j, const std::string& source = "<corpus>");
Corpus load_corpus(const std::filesystem::path& path);
Json corpus_to_json(const Corpus& c);

Json load_json(const std::filesystem::path& path);

struct SelftestItem {
  std::string file;
  std::string check;
  Json expected;
  Json actual;
  bool pass = false;
};

std::vector<SelftestItem> selftest_corpus(const Corpus& c, MonomialOrder order = {}, unsigned threads = 1);
std::vector<SelftestItem> selftest_directory(const std::filesystem::path& dir, MonomialOrder order = {},
                                             unsigned threads = 1);

// Exit codes: 0 success, 1 domain error (or failed selftest), 2 usage/parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfres::cli
