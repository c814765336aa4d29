#pragma once

// Scenario registry and the checks behind each scenario.
//
// Every scenario writes <out>/<scenario>_summary.json:
//   {"schema_version": 1, "scenario": ..., "pass": bool,
//    "verdicts": [{"check", "lhs", "rhs", "constant", "pass"}...], "details": {...}}
// A verdict passes when lhs <= constant * rhs. Wall-clock times go to
// <out>/<scenario>_timing.json so that summaries are reproducible byte for byte.

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hnls/config.hpp"

namespace hnls {

inline constexpr int kSummarySchemaVersion = 1;

struct Verdict {
  std::string check;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 1.0;
  bool pass = false;
};

/// lhs <= constant * rhs (NaN fails).
Verdict make_verdict(std::string check, double lhs, double rhs, double constant = 1.0);
nlohmann::json to_json(const Verdict& v);

struct CheckOutput {
  std::vector<Verdict> verdicts;
  nlohmann::json details = nlohmann::json::object();

  bool pass() const;
  void append(CheckOutput other, const std::string& prefix);
};

/// Frozen constants of the one-sided inequalities. The regression gate compares
/// measured maxima against a baseline file written when these were frozen.
struct FrozenConstants {
  double morawetz = 0.0;
  double refined_sobolev = 0.0;
  double local_smoothing = 0.0;
};
FrozenConstants frozen_constants();

namespace checks {

CheckOutput plancherel(const RunConfig& cfg);       // round trip and Plancherel on a corpus
CheckOutput lp_calculus(const RunConfig& cfg);      // P_N reconstruction and heat kernel
CheckOutput conservation(const RunConfig& cfg);     // unitarity, drifts, convergence order
CheckOutput dispersive(const RunConfig& cfg);
CheckOutput morawetz(const RunConfig& cfg);
CheckOutput scaling_limit(const RunConfig& cfg);
CheckOutput extinction(const RunConfig& cfg);
CheckOutput profiles(const RunConfig& cfg);
CheckOutput sobolev(const RunConfig& cfg);

}  // namespace checks

/// Radial Laplacian f'' + 2 coth(r) f' on H^3 by five-point differences.
double fd_radial_laplacian(const std::function<double(double)>& f, double r, double h = 1e-3);

/// Data described by cfg.data on cfg.grid, normalized as configured.
RadialField initial_data(const RunConfig& cfg);

struct RunOptions {
  std::filesystem::path out_dir;  // overrides output.dir when non-empty
  int threads = 1;
  bool verbose = false;
};

/// Scenario names in registry order.
const std::vector<std::string>& scenario_names();

/// Runs cfg.scenario and writes its files. Throws ScenarioUnknown.
nlohmann::json run_scenario(const RunConfig& cfg, const RunOptions& opts);

/// Loads the config, runs it and maps the outcome to an exit code:
/// 0 all checks pass, 2 a check failed, 1 error.
int run(const std::filesystem::path& config, const RunOptions& opts);

}  // namespace hnls
