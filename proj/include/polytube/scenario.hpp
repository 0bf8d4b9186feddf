#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polytube/json_io.hpp"

namespace polytube {

struct CrossSectionSpec {
  std::vector<int> coords;
  std::vector<double> values;
};

enum class BoundedStrategy { Ellipsoid, BoxTemplate, Multi };

// Parsed scenario file. System, tube, and disturbance stay in raw JSON and
// are resolved when the scenario runs, so configs round-trip unchanged.
struct ScenarioConfig {
  std::string name;
  Json system;
  int horizon = 1;
  double alpha = 0.8;
  Json input_space;
  Json tube;
  Json disturbance;
  BoundedStrategy strategy = BoundedStrategy::Ellipsoid;
  Json bounded_set;
  bool oracle_enabled = false;
  std::optional<GridSpec> grid;
  std::vector<std::string> checks;
  std::optional<CrossSectionSpec> cross_section;
  unsigned seed = 0;
  std::string out_dir = "out";
  Json metadata;
};

ScenarioConfig parse_scenario(const Json& j);
Json scenario_to_json(const ScenarioConfig& cfg);

// Resolved model pieces, exposed for tests and the acceptance suite.
struct ResolvedScenario {
  LtvSystem system;
  TargetTube tube;
  GaussianDisturbance disturbance;
  Json metadata;
};

ResolvedScenario resolve_scenario(const ScenarioConfig& cfg);

// Rebuilds a chain-of-integrators scenario (isotropic diagonal disturbance,
// named tube) at a different state dimension.
ScenarioConfig with_dimension(const ScenarioConfig& cfg, int dim);

struct RunReport {
  std::map<std::string, bool> check_results;
  std::vector<std::string> messages;
  std::vector<std::string> files_written;
  double lagrangian_ms = 0.0;
  double dp_ms = 0.0;
  bool all_passed() const {
    for (const auto& [name, ok] : check_results)
      if (!ok) return false;
    return true;
  }
};

// Runs recursions, oracles, and checks; writes tubes, CSV dumps, timings, and
// a report into cfg.out_dir.
RunReport run_scenario(const ScenarioConfig& cfg);

// Writes the three canonical scenario files; returns their paths.
std::vector<std::string> make_scenarios(const std::string& out_dir);

}  // namespace polytube
