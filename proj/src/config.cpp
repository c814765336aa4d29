#include "hnls/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "hnls/errors.hpp"

namespace hnls {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  const char* begin = v.c_str();
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw ConfigParse(key + ": expected a number, got '" + v + "'");
  }
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigParse(key + ": expected an integer, got '" + v + "'");
  }
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  throw ConfigParse(key + ": expected a boolean, got '" + v + "'");
}

std::vector<std::string> to_words(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& w : to_words(v)) out.push_back(to_double(key, w));
  if (out.empty()) throw ConfigParse(key + ": empty list");
  return out;
}

Geometry to_geometry(const std::string& key, const std::string& v) {
  if (v == "hyperbolic") return Geometry::Hyperbolic;
  if (v == "euclidean") return Geometry::Euclidean;
  throw ConfigParse(key + ": geometry must be hyperbolic or euclidean");
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& v)>;

const std::map<std::string, Setter>& schema() {
  static const std::map<std::string, Setter> s = [] {
    std::map<std::string, Setter> m;
    auto dbl = [&m](const std::string& k, double RunConfig::*field) {
      m[k] = [field](RunConfig& c, const std::string& key, const std::string& v) {
        c.*field = to_double(key, v);
      };
    };
    m["run.scenario"] = [](RunConfig& c, const std::string&, const std::string& v) { c.scenario = v; };
    m["run.seed"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.seed = static_cast<std::uint64_t>(to_int(k, v));
    };

    m["grid.geometry"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.geometry = to_geometry(k, v);
    };
    // Grids are assembled from two keys after the pass (grid_from).
    m["grid.r_max"] = [](RunConfig&, const std::string&, const std::string&) {};
    m["grid.n"] = [](RunConfig&, const std::string&, const std::string&) {};

    dbl("solver.dt", &RunConfig::dt);
    dbl("solver.t_end", &RunConfig::t_end);
    dbl("solver.boundary_tolerance", &RunConfig::boundary_tolerance);
    dbl("solver.morawetz_N", &RunConfig::morawetz_N);
    m["solver.nonlinear"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.nonlinear = to_bool(k, v);
    };
    m["solver.record_every"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.record_every = static_cast<int>(to_int(k, v));
    };

    m["data.family"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      if (v != "gaussian" && v != "shell" && v != "chirped") {
        throw ConfigParse(k + ": unknown family '" + v + "'");
      }
      c.data.family = v;
    };
    m["data.amplitude"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.data.amplitude = to_double(k, v);
    };
    m["data.width"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.data.width = to_double(k, v);
    };
    m["data.center"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.data.center = to_double(k, v);
    };
    m["data.chirp"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.data.chirp = to_double(k, v);
    };
    dbl("data.energy", &RunConfig::data_energy);
    dbl("data.gradient_norm", &RunConfig::data_gradient_norm);

    m["output.dir"] = [](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = v; };
    m["output.trajectory"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.write_trajectory = to_bool(k, v);
    };

    m["checks.conservation"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.conservation = to_bool(k, v);
    };
    m["checks.corpus_size"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.corpus_size = static_cast<int>(to_int(k, v));
    };
    m["checks.dispersive_p"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.dispersive_p = to_double(k, v);
    };
    m["checks.dispersive_t_min"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.dispersive_t_min = to_double(k, v);
    };
    m["checks.dispersive_t_max"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.dispersive_t_max = to_double(k, v);
    };
    m["checks.dispersive_points"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.dispersive_points = static_cast<int>(to_int(k, v));
    };
    m["checks.dispersive_r_max"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.dispersive_r_max = to_double(k, v);
    };
    m["checks.dispersive_n"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.dispersive_n = static_cast<int>(to_int(k, v));
    };
    m["checks.morawetz_runs"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.morawetz_runs = static_cast<int>(to_int(k, v));
    };
    m["checks.morawetz_t_end"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.morawetz_t_end = to_double(k, v);
    };
    m["checks.sobolev_n_max"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.sobolev_n_max = to_double(k, v);
    };
    m["checks.smoothing_K"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.checks.smoothing_K = to_list(k, v);
    };
    m["checks.baseline"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.checks.baseline = v;
    };

    m["scaling.T0"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.scaling.T0 = to_double(k, v);
    };
    m["scaling.R"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.scaling.R = to_double(k, v);
    };
    m["scaling.N_list"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.scaling.N_list = to_list(k, v);
    };
    m["scaling.dt"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.scaling.dt = to_double(k, v);
    };
    m["scaling.record_every"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.scaling.record_every = static_cast<int>(to_int(k, v));
    };
    m["scaling.epsilon"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.scaling.epsilon = to_double(k, v);
    };
    m["scaling.nonlinear"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.scaling.nonlinear = to_bool(k, v);
    };
    m["scaling.linear_too"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.scaling_linear_too = to_bool(k, v);
    };
    dbl("scaling.width", &RunConfig::scaling_width);
    for (const char* k : {"scaling.hyperbolic_r_max", "scaling.hyperbolic_n", "scaling.euclidean_r_max",
                          "scaling.euclidean_n", "extinction.hyperbolic_r_max", "extinction.hyperbolic_n",
                          "extinction.euclidean_r_max", "extinction.euclidean_n"}) {
      m[k] = [](RunConfig&, const std::string&, const std::string&) {};
    }

    m["extinction.N_list"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.extinction.N_list = to_list(k, v);
    };
    m["extinction.T1_list"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.extinction.T1_list = to_list(k, v);
    };
    m["extinction.p"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.extinction.p = to_double(k, v);
    };
    m["extinction.q"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.extinction.q = to_double(k, v);
    };
    m["extinction.t_max"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.extinction.t_max = to_double(k, v);
    };
    m["extinction.points_per_decade"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.extinction.points_per_decade = static_cast<int>(to_int(k, v));
    };

    m["profiles.length"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.profiles.length = static_cast<int>(to_int(k, v));
    };
    m["profiles.threshold"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.profiles.threshold = to_double(k, v);
    };
    m["profiles.j_max"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.profiles.j_max = static_cast<int>(to_int(k, v));
    };
    m["profiles.hyperbolic_amplitude"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.profiles.hyperbolic_amplitude = to_double(k, v);
    };
    m["profiles.hyperbolic_time_span"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.profiles.hyperbolic_time_span = to_double(k, v);
    };
    m["profiles.euclidean_amplitude"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.profiles.euclidean_amplitude = to_double(k, v);
    };
    m["profiles.euclidean_width"] = [](RunConfig& c, const std::string& k, const std::string& v) {
      c.profiles.euclidean_width = to_double(k, v);
    };

    m["sweep.scenario"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.sweep.scenario = v;
    };
    m["sweep.parameter"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.sweep.parameter = v;
    };
    m["sweep.values"] = [](RunConfig& c, const std::string&, const std::string& v) {
      c.sweep.values = to_words(v);
    };
    return m;
  }();
  return s;
}

RadialGrid grid_from(const IniMap& values, const std::string& section, const RadialGrid& fallback) {
  double r_max = fallback.r_max;
  long long n = fallback.n;
  if (auto it = values.find(section + "r_max"); it != values.end()) r_max = to_double(it->first, it->second);
  if (auto it = values.find(section + "n"); it != values.end()) n = to_int(it->first, it->second);
  if (!(r_max > 0.0) || n < 16) throw ConfigParse(section + "grid needs r_max > 0 and n >= 16");
  return RadialGrid(r_max, static_cast<int>(n));
}

void validate(const RunConfig& c) {
  if (c.scenario.empty()) throw ConfigParse("run.scenario is required");
  if (!(c.dt > 0.0)) throw ConfigParse("solver.dt must be positive");
  if (!(c.t_end >= 0.0)) throw ConfigParse("solver.t_end must be non-negative");
  if (c.record_every < 1) throw ConfigParse("solver.record_every must be at least 1");
  if (!(c.morawetz_N >= 1.0)) throw ConfigParse("solver.morawetz_N must be at least 1");
  if (!(c.data.width > 0.0)) throw ConfigParse("data.width must be positive");
  if (c.data_energy < 0.0 || c.data_gradient_norm < 0.0) {
    throw ConfigParse("data.energy and data.gradient_norm must be non-negative");
  }
  if (c.checks.corpus_size < 1) throw ConfigParse("checks.corpus_size must be at least 1");
  if (c.checks.dispersive_points < 2) throw ConfigParse("checks.dispersive_points must be at least 2");
  if (c.profiles.length < 2) throw ConfigParse("profiles.length must be at least 2");
  for (double N : c.scaling.N_list) {
    if (N < 1.0) throw ConfigParse("scaling.N_list entries must be at least 1");
  }
  for (double N : c.extinction.N_list) {
    if (N < 1.0) throw ConfigParse("extinction.N_list entries must be at least 1");
  }
  if (c.scenario == "sweep") {
    if (c.sweep.values.empty()) throw ConfigParse("sweep.values is empty");
    if (c.sweep.scenario == "sweep") throw ConfigParse("sweep cannot nest itself");
    if (!schema().contains(c.sweep.parameter)) {
      throw ConfigParse("sweep.parameter '" + c.sweep.parameter + "' is not a config key");
    }
  }
}

}  // namespace

IniMap parse_ini(const std::string& text) {
  IniMap out;
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigParse("line " + std::to_string(lineno) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigParse("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty()) throw ConfigParse("line " + std::to_string(lineno) + ": key outside a section");
    const std::string key = section + "." + trim(line.substr(0, eq));
    if (out.contains(key)) throw ConfigParse("line " + std::to_string(lineno) + ": duplicate key " + key);
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : schema()) keys.push_back(k);
  return keys;
}

RunConfig config_from_map(const IniMap& values) {
  RunConfig c;
  const auto& s = schema();
  for (const auto& [key, value] : values) {
    auto it = s.find(key);
    if (it == s.end()) throw ConfigParse("unknown key '" + key + "'");
    it->second(c, key, value);
  }
  c.grid = grid_from(values, "grid.", c.grid);
  c.scaling.hyperbolic_grid = grid_from(values, "scaling.hyperbolic_", c.scaling.hyperbolic_grid);
  c.scaling.euclidean_grid = grid_from(values, "scaling.euclidean_", c.scaling.euclidean_grid);
  c.extinction.hyperbolic_grid = grid_from(values, "extinction.hyperbolic_", c.extinction.hyperbolic_grid);
  c.extinction.euclidean_grid = grid_from(values, "extinction.euclidean_", c.extinction.euclidean_grid);
  c.raw = values;
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  IniMap values = parse_ini(buf.str());
  for (const auto& key : config_keys()) {
    std::string env = "HNLS_" + key;
    std::replace(env.begin(), env.end(), '.', '_');
    std::transform(env.begin(), env.end(), env.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    if (const char* v = std::getenv(env.c_str())) values[key] = v;
  }
  RunConfig cfg = config_from_map(values);
  if (!cfg.checks.baseline.empty() && std::filesystem::path(cfg.checks.baseline).is_relative()) {
    cfg.checks.baseline = (path.parent_path() / cfg.checks.baseline).string();
  }
  return cfg;
}

}  // namespace hnls
