// hnls: run a configured scenario, or list the registry.
//
//   hnls --config configs/morawetz.ini --out results --threads 4 --verbose
//   hnls list
//   hnls keys

#include <iostream>

#include <CLI11.hpp>

#include "hnls/config.hpp"
#include "hnls/scenarios.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Radial NLS laboratory on hyperbolic space"};
  app.require_subcommand(0, 1);

  std::string config;
  hnls::RunOptions opts;
  std::string out;
  app.add_option("--config", config, "scenario config file")->check(CLI::ExistingFile);
  app.add_option("--out", out, "output directory (overrides output.dir)");
  app.add_option("--threads", opts.threads, "worker threads for sweep")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", opts.verbose, "print verdicts and progress to stderr");

  auto* list = app.add_subcommand("list", "print the scenario registry");
  auto* keys = app.add_subcommand("keys", "print every config key");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 returns 0 for --help; bad arguments are errors.
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (list->parsed()) {
    for (const auto& name : hnls::scenario_names()) std::cout << name << '\n';
    return 0;
  }
  if (keys->parsed()) {
    for (const auto& k : hnls::config_keys()) std::cout << k << '\n';
    return 0;
  }
  if (config.empty()) {
    std::cerr << "error: --config is required\n";
    return 1;
  }
  opts.out_dir = out;
  return hnls::run(config, opts);
}
