#pragma once

// Run configuration.
//
// Flat INI text: "[section]" headers, "key = value" lines, '#' or ';' comments.
// Every key must appear in the schema (see config.cpp); unknown sections or keys
// are rejected. Lists are comma separated. Environment variables named
// HNLS_<SECTION>_<KEY> (upper case) override file values, e.g. HNLS_SOLVER_DT.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hnls/euclidean_comparison.hpp"
#include "hnls/field.hpp"
#include "hnls/radial_field.hpp"

namespace hnls {

/// "section.key" -> raw value.
using IniMap = std::map<std::string, std::string>;

IniMap parse_ini(const std::string& text);

struct ChecksConfig {
  bool conservation = false;  // simulate: add the refinement study
  int corpus_size = 20;
  double dispersive_p = 1.2;
  double dispersive_t_min = 1.0;
  double dispersive_t_max = 100.0;
  int dispersive_points = 21;
  double dispersive_r_max = 3000.0;
  int dispersive_n = 16384;
  int morawetz_runs = 5;
  double morawetz_t_end = 1.0;  // window of the space-time inequality runs
  double sobolev_n_max = 256.0;
  std::vector<double> smoothing_K{4.0, 8.0, 16.0, 32.0};
  std::string baseline;  // constants JSON, relative to the config file; empty = no gate
};

struct ProfileConfig {
  int length = 8;
  double threshold = 0.05;
  int j_max = 5;
  double hyperbolic_amplitude = 0.5;
  double hyperbolic_time_span = 0.5;
  double euclidean_amplitude = 1.0;
  double euclidean_width = 1.0;
};

struct SweepConfig {
  std::string scenario = "simulate";
  std::string parameter = "solver.dt";  // any schema key
  std::vector<std::string> values;
};

struct RunConfig {
  std::string scenario;
  std::uint64_t seed = 1;

  Geometry geometry = Geometry::Hyperbolic;
  RadialGrid grid{30.0, 4096};

  double dt = 1e-3;
  double t_end = 1.0;
  bool nonlinear = true;
  int record_every = 10;
  double boundary_tolerance = 1e-8;
  double morawetz_N = 1.0;

  DataSpec data;
  /// Rescale the data to this energy (0 keeps the amplitude as given).
  double data_energy = 0.0;
  /// Rescale the data to this gradient norm (0 keeps the amplitude); applied after data_energy.
  double data_gradient_norm = 0.0;

  std::filesystem::path output_dir = "out";
  bool write_trajectory = false;

  ChecksConfig checks;
  ScalingLimitConfig scaling;
  double scaling_width = 2.5;  // Euclidean bump width for euclid-compare
  bool scaling_linear_too = true;  // also run the linear comparison (epsilon 1e-2)
  ExtinctionConfig extinction;
  ProfileConfig profiles;
  SweepConfig sweep;

  IniMap raw;  // the merged key/value map the config was built from
};

/// Builds a RunConfig from a key map (defaults for missing keys). Throws ConfigParse.
RunConfig config_from_map(const IniMap& values);

/// Reads `path`, applies HNLS_* environment overrides and validates. Throws
/// ConfigParse, or IoError when the file cannot be read.
RunConfig load_config(const std::filesystem::path& path);

/// Schema keys in "section.key" form, sorted.
std::vector<std::string> config_keys();

}  // namespace hnls
