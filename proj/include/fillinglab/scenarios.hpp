#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fillinglab/report.hpp"

namespace fillinglab {

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parameters for one run. The JSON form doubles as the report's input block
// and as the --config file schema.
struct ScenarioConfig {
  std::string arena;  // "projective", "tree", "plane", "constants"

  int n = 2;
  long k = 4;
  Rational epsilon{1, 10};
  bool epsilon_set = false;  // constants arena: unset means audit a grid
  int rank = 2;
  int q = 2;
  int radius = 8;
  unsigned long samples = 100;
  std::uint64_t seed = 1;

  std::vector<std::string> u_prefixes{"x"};  // tree arena clopen sets
  std::vector<std::string> v_prefixes{"y"};

  std::vector<SteerTarget> targets;  // projective; empty = canonical U_j(eps)
  int obstruction_entries = 100;     // sampled translate tuples
  int obstruction_max_len = 6;

  Json to_json() const;
  static ScenarioConfig from_json(const Json& j);

  void validate() const;  // throws config_error
};

// Runs one scenario and assembles the full report. Deterministic for a fixed
// (config, seed) pair except for the timings_ms block.
Json run_scenario(const ScenarioConfig& cfg);

// Report level helpers shared with the CLI: 0 certified, 1 sampled-only,
// 2 requested check failed, 3 reserved for errors outside the report.
int exit_code_for_report(const Json& report);

struct RecheckResult {
  bool ok = true;
  std::vector<std::string> failures;
};

// Independent verification pass: re-derives every certificate from the
// report's stated inputs using only checking primitives (exact arithmetic,
// region membership, boundary actions, cover tables). Never calls the
// witness-search code paths. Malformed reports raise report_parse_error.
RecheckResult recheck_certificate(const Json& report);

}  // namespace fillinglab
