#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hnls/config.hpp"
#include "hnls/errors.hpp"
#include "hnls/scenarios.hpp"

using namespace hnls;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hnls_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(HNLS_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("INI parsing") {
  const IniMap m = parse_ini("# comment\n[run]\nscenario = simulate ; trailing\n\n[solver]\ndt=2e-3\n");
  CHECK(m.at("run.scenario") == "simulate");
  CHECK(m.at("solver.dt") == "2e-3");
  CHECK_THROWS_AS(parse_ini("[run]\nscenario = a\nscenario = b\n"), ConfigParse);
  CHECK_THROWS_AS(parse_ini("scenario = a\n"), ConfigParse);
  CHECK_THROWS_AS(parse_ini("[run\n"), ConfigParse);
}

TEST_CASE("schema validation") {
  const RunConfig c = config_from_map({{"run.scenario", "simulate"}, {"solver.dt", "2e-3"}, {"grid.n", "2048"}});
  CHECK(c.dt == 2e-3);
  CHECK(c.grid.n == 2048);
  CHECK(c.grid.r_max == 30.0);
  CHECK_THROWS_AS(config_from_map({{"run.scenario", "simulate"}, {"solver.dtt", "1"}}), ConfigParse);
  CHECK_THROWS_AS(config_from_map({{"run.scenario", "simulate"}, {"solver.dt", "0"}}), ConfigParse);
  CHECK_THROWS_AS(config_from_map({{"run.scenario", "simulate"}, {"solver.dt", "-1e-3"}}), ConfigParse);
  CHECK_THROWS_AS(config_from_map({{"run.scenario", "simulate"}, {"solver.dt", "fast"}}), ConfigParse);
  CHECK_THROWS_AS(config_from_map({{"solver.dt", "1e-3"}}), ConfigParse);

  const auto keys = config_keys();
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(std::find(keys.begin(), keys.end(), "solver.dt") != keys.end());
}

TEST_CASE("environment overrides file values") {
  const fs::path dir = scratch("env");
  std::ofstream(dir / "c.ini") << "[run]\nscenario = simulate\n[solver]\ndt = 1e-3\n";
  ::setenv("HNLS_SOLVER_DT", "5e-4", 1);
  const RunConfig c = load_config(dir / "c.ini");
  ::unsetenv("HNLS_SOLVER_DT");
  CHECK(c.dt == 5e-4);
  CHECK(load_config(dir / "c.ini").dt == 1e-3);
  CHECK_THROWS_AS(load_config(dir / "missing.ini"), IoError);
}

TEST_CASE("registry order") {
  const std::vector<std::string> expected{"simulate",      "transform-selftest", "dispersive-test", "morawetz-test",
                                          "sobolev-test",  "euclid-compare",     "profile-extract", "sweep"};
  CHECK(scenario_names() == expected);
  RunConfig c = config_from_map({{"run.scenario", "simulate"}});
  c.scenario = "nope";
  CHECK_THROWS_AS(run_scenario(c, {}), ScenarioUnknown);
}

TEST_CASE("cli exit codes") {
  const fs::path dir = scratch("exit");
  CHECK(run_cli("list", dir / "list.log") == 0);
  std::string listed = slurp(dir / "list.log");
  CHECK(listed.rfind("simulate\ntransform-selftest\n", 0) == 0);

  CHECK(run_cli("--config " + (dir / "absent.ini").string(), dir / "a.log") == 1);
  std::ofstream(dir / "bad.ini") << "[run]\nscenario = simulate\n[solver]\ndt = 0\n";
  CHECK(run_cli("--config " + (dir / "bad.ini").string(), dir / "b.log") == 1);
  std::ofstream(dir / "unknown.ini") << "[run]\nscenario = warp\n";
  CHECK(run_cli("--config " + (dir / "unknown.ini").string(), dir / "c.log") == 1);

  // a run that aborts on the boundary is an error, not a failed check
  std::ofstream(dir / "edge.ini") << "[run]\nscenario = simulate\n[grid]\nr_max = 6\nn = 256\n"
                                     "[solver]\ndt = 1e-2\nt_end = 3\nnonlinear = false\n"
                                     "[data]\nfamily = shell\ncenter = 3\nwidth = 0.5\n";
  CHECK(run_cli("--config " + (dir / "edge.ini").string() + " --out " + (dir / "edge").string(), dir / "d.log") == 1);
}

TEST_CASE("summaries are reproducible byte for byte") {
  const fs::path dir = scratch("repro");
  const std::string cfg = std::string(HNLS_CONFIG_DIR) + "/transform_selftest.ini";
  REQUIRE(run_cli("--config " + cfg + " --out " + (dir / "a").string(), dir / "a.log") == 0);
  REQUIRE(run_cli("--config " + cfg + " --out " + (dir / "b").string(), dir / "b.log") == 0);
  const std::string a = slurp(dir / "a" / "transform-selftest_summary.json");
  CHECK(!a.empty());
  CHECK(a == slurp(dir / "b" / "transform-selftest_summary.json"));
  CHECK(fs::exists(dir / "a" / "transform-selftest_timing.json"));
}
