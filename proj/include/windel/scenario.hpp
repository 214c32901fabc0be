#pragma once

#include <string>
#include <vector>

#include "windel/params.hpp"
#include "windel/wind.hpp"

namespace windel {

enum class InitKind { Steady, Cold };

struct Toggles {
  bool ramp_limits = true;
  bool switching_block = false;
};

struct RunSettings {
  std::string name = "scenario";
  double duration = 10.0;       // s
  double dt = 1e-3;             // s
  double output_period = 0.0;   // s; 0 means every step
  double capacity_ratio = 1.0;  // electrolyzer rating / turbine rating
  InitKind init = InitKind::Steady;
};

struct Scenario {
  RunSettings run;
  Toggles toggles;
  WindProfile wind;
  Params params;
};

struct ParseOutcome {
  Scenario scenario;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

// Sectioned key/value text -> scenario.  Unknown keys are errors unless
// lenient, all problems are collected in one pass.  An empty document
// yields the all-defaults scenario.  On success the scenario is finalized
// (derived parameters filled).
ParseOutcome parse_scenario(const std::string& text, bool lenient = false);

// Canonical serialization: every key in schema order.  parse of the output
// reproduces the scenario; digests hash this form.
std::string serialize_scenario(const Scenario& s);

// Range and consistency validation with collected messages.
std::vector<std::string> validate_scenario(const Scenario& s);

// FNV-1a over the canonical serialization, 16 hex digits.
std::string scenario_digest(const Scenario& s);
// Same hash over the parameter sections only.
std::string config_digest(const Scenario& s);

const std::vector<std::string>& builtin_scenario_names();
bool is_builtin_scenario(const std::string& name);
// Built-ins are parsed from embedded scenario text, so they pass the same
// schema as user files.
Scenario builtin_scenario(const std::string& name);
std::string builtin_scenario_text(const std::string& name);

// Derived fields + validation in one call for user-constructed scenarios.
std::vector<std::string> finalize_scenario(Scenario& s);

}  // namespace windel
