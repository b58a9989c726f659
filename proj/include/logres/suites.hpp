#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "logres/diffring.hpp"
#include "logres/dividedpower.hpp"
#include "logres/jets.hpp"

namespace logres {

using json = nlohmann::json;

struct RunConfig {
  std::optional<std::uint64_t> characteristic;  // unset: the suite's default field list
  std::optional<std::string> g;                 // builtin name or JSON file; unset: suite default
  std::optional<int> n, bound, trials;
  std::uint64_t seed = 1;
  int jobs = 1;        // never changes the report
  std::string input;   // document for jet-check, bd-check, residue-map
};

struct Check {
  std::string id;
  bool pass = true;
  std::size_t count = 0;  // instances examined
  json failures = json::array();  // first few, with exact values
  json info;                      // null or suite-specific values
};

struct SuiteReport {
  std::string suite;
  json config;
  std::vector<Check> checks;  // sorted by id
  json result;                // null or the computed values (lie-dim, exactness, ...)
  json output;                // null or a document to write with -o

  bool pass() const;
  json to_json() const;
  std::string human() const;
};

// parshin, pd-axioms, crys, lie-dim, pair-rank, trees, jet-check, jet-fuzz, bd-check, residue-map, exactness, all
const std::vector<std::string>& suite_names();
// Throws InputError for an unknown suite or a bad configuration.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

// Deterministic per-item generator: depends only on (seed, stream, index).
std::mt19937_64 item_rng(std::uint64_t seed, const std::string& stream, std::uint64_t index);

// Generators shared by the suites and the Python bindings.
RingElem random_ring_elem(const FieldSpec& f, int n, std::mt19937_64& rng, int max_exp = 3, int max_pole = 2);
PDElem random_pd_elem(const FieldSpec& f, int k, std::mt19937_64& rng, int max_deg = 2);
GKElem random_gk_elem(const LieAlgebra& g, std::mt19937_64& rng, int lo, int hi);

}  // namespace logres
