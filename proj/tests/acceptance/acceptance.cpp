// Runs every acceptance criterion against the checked-in configs and prints
// one line per criterion. Exit status is nonzero if any line fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "hnls/config.hpp"
#include "hnls/scenarios.hpp"

namespace {

struct Criterion {
  int id;
  const char* label;
  const char* config;
  double limit_s;  // 0 = no runtime limit
  std::function<hnls::CheckOutput(const hnls::RunConfig&)> check;
};

}  // namespace

int main() {
  using namespace hnls;
  const std::string dir = HNLS_CONFIG_DIR;
  const std::vector<Criterion> criteria{
      {1, "Plancherel and round trip", "transform_selftest.ini", 5.0, checks::plancherel},
      {2, "unitarity and conservation", "simulate.ini", 60.0, checks::conservation},
      {3, "dispersive decay", "dispersive.ini", 120.0, checks::dispersive},
      {4, "Morawetz weight, identity, inequality", "morawetz.ini", 300.0, checks::morawetz},
      {5, "P_N calculus and heat kernel", "transform_selftest.ini", 30.0, checks::lp_calculus},
      {6, "scaling limit", "euclid_compare.ini", 600.0, checks::scaling_limit},
      {7, "Strichartz extinction", "euclid_compare.ini", 120.0, checks::extinction},
      {8, "profile extraction", "profile_extract.ini", 180.0, checks::profiles},
      {9, "refined Sobolev and local smoothing", "sobolev.ini", 0.0, checks::sobolev},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    bool ok = false;
    double secs = 0.0;
    std::string note;
    try {
      const RunConfig cfg = load_config(dir + "/" + c.config);
      const auto t0 = std::chrono::steady_clock::now();
      const CheckOutput out = c.check(cfg);
      secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      ok = out.pass() && (c.limit_s == 0.0 || secs < c.limit_s);
      for (const auto& v : out.verdicts) {
        if (!v.pass) note += " [" + v.check + ": " + std::to_string(v.lhs) + " > " + std::to_string(v.constant * v.rhs) + "]";
      }
      if (c.limit_s > 0.0 && secs >= c.limit_s) note += " [runtime over limit]";
      if (note.empty()) note = " " + std::to_string(out.verdicts.size()) + " checks";
    } catch (const std::exception& e) {
      note = std::string(" error: ") + e.what();
    }
    char limit[32] = "none";
    if (c.limit_s > 0.0) std::snprintf(limit, sizeof limit, "%.0f s", c.limit_s);
    std::printf("criterion %d %s  %-40s %8.2f s (limit %s)%s\n", c.id, ok ? "PASS" : "FAIL", c.label, secs, limit,
                note.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
