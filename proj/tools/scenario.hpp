#pragma once

// Scenario specifications and reports for the batch front door.  A scenario
// is an ordered list of named checks; the report carries one verdict per
// check plus a summary, and serializes to byte-stable JSON (durations only
// appear in the text rendering).

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regclose/canonical.hpp"

namespace regclose::cli {

struct CheckSpec {
  std::string kind;  // closure | compare | hull | diagonal | axioms | thm41
                     // | epi-dense | oracle-agreement
  std::map<std::string, std::string> args;
};

struct ScenarioSpec {
  std::string name;
  int max_points = kDefaultMaxPoints;
  std::vector<CheckSpec> checks;

  static ScenarioSpec from_json_text(const std::string& text);
};

struct CheckResult {
  std::string check;
  std::string verdict;  // pass | fail | bounded-pass
  std::optional<int> bound;
  nlohmann::json witnesses = nlohmann::json::array();
  double duration_ms = 0.0;
};

struct Report {
  std::string scenario;
  std::vector<CheckResult> results;

  int passes() const;
  int failures() const;
  int bounded_passes() const;

  nlohmann::json to_json() const;
  static Report from_json(const nlohmann::json& j);
  std::string to_text() const;
};

/// Exit code 0 when every check passes (bounded-pass counts as a pass),
/// 1 otherwise.  Input errors surface as exceptions and map to 2.
int exit_code(const Report& r);

CheckResult run_check(const CheckSpec& check, int default_max_points,
                      const std::filesystem::path& base_dir, Workspace& ws);
Report run_scenario_spec(const ScenarioSpec& spec, const std::filesystem::path& base_dir);
Report run_scenario(const std::filesystem::path& file);

}  // namespace regclose::cli
