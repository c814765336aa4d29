#include "hnls/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include "hnls/diagnostics.hpp"
#include "hnls/errors.hpp"
#include "hnls/euclidean_comparison.hpp"
#include "hnls/field.hpp"
#include "hnls/field_io.hpp"
#include "hnls/morawetz.hpp"
#include "hnls/profiles.hpp"
#include "hnls/propagator.hpp"
#include "hnls/radial_transform.hpp"

namespace hnls {

namespace {

using json = nlohmann::json;
constexpr double kInf = std::numeric_limits<double>::infinity();

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double l2_distance(const RadialField& a, const RadialField& b) { return std::sqrt(mass(a - b)); }

RadialField unit_gradient(RadialField f) {
  f *= cplx{1.0 / std::sqrt(gradient_norm2(f)), 0.0};
  return f;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  }
  return out;
}

SolverConfig solver_config(const RunConfig& cfg) {
  SolverConfig s;
  s.dt = cfg.dt;
  s.t_end = cfg.t_end;
  s.geometry = cfg.geometry;
  s.grid = cfg.grid;
  s.nonlinearity_on = cfg.nonlinear;
  s.record_every = cfg.record_every;
  s.boundary_tolerance = cfg.boundary_tolerance;
  s.morawetz_N = cfg.morawetz_N;
  return s;
}

Trajectory run_solver(const RadialField& phi, const SolverConfig& s) {
  return s.geometry == Geometry::Euclidean ? euclid_evolve(phi, s) : evolve(phi, s);
}

struct Baseline {
  bool present = false;
  FrozenConstants values;
};

Baseline load_baseline(const std::string& path) {
  Baseline b;
  if (path.empty()) return b;
  std::ifstream in(path);
  if (!in) throw IoError("cannot read baseline " + path);
  json j;
  try {
    in >> j;
    b.values.morawetz = j.at("morawetz").get<double>();
    b.values.refined_sobolev = j.at("refined_sobolev").get<double>();
    b.values.local_smoothing = j.at("local_smoothing").get<double>();
  } catch (const json::exception& e) {
    throw ConfigParse("baseline " + path + ": " + e.what());
  }
  b.present = true;
  return b;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_diagnostics_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "t,mass,energy,l6,z_increment,morawetz_action,boundary_mass\n";
  char line[256];
  for (const auto& d : traj.diagnostics) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", d.t, d.mass,
                  d.energy, d.l6, d.z_increment, d.morawetz_action, d.boundary_mass);
    out << line;
  }
}

void write_scaling_csv(const std::filesystem::path& path, const ScalingLimitResult& r) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "N,sup_H1_dist,strichartz_dist\n";
  char line[128];
  for (const auto& row : r.rows) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", row.N, row.sup_h1_dist,
                  row.strichartz_dist);
    out << line;
  }
}

}  // namespace

double fd_radial_laplacian(const std::function<double(double)>& f, double r, double h) {
  const double fm2 = f(r - 2 * h), fm1 = f(r - h), f0 = f(r), fp1 = f(r + h), fp2 = f(r + 2 * h);
  const double d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
  const double d2 = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
  return d2 + 2.0 / std::tanh(r) * d1;
}

Verdict make_verdict(std::string check, double lhs, double rhs, double constant) {
  Verdict v{std::move(check), lhs, rhs, constant, false};
  v.pass = lhs <= constant * rhs;  // false for NaN
  return v;
}

json to_json(const Verdict& v) {
  return {{"check", v.check}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"constant", v.constant}, {"pass", v.pass}};
}

bool CheckOutput::pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

void CheckOutput::append(CheckOutput other, const std::string& prefix) {
  for (auto& v : other.verdicts) {
    v.check = prefix + "." + v.check;
    verdicts.push_back(std::move(v));
  }
  details[prefix] = std::move(other.details);
}

// Frozen once from the default corpora (measured maxima 7.8e-4, 1.81, 0.33),
// with headroom; tests/data/baseline_constants.json keeps the measured values.
FrozenConstants frozen_constants() { return {1e-2, 3.0, 1.0}; }

RadialField initial_data(const RunConfig& cfg) {
  RadialField f = make_data(cfg.grid, cfg.geometry, cfg.data);
  if (cfg.data_energy > 0.0) f = normalize_energy(f, cfg.data_energy);
  if (cfg.data_gradient_norm > 0.0) {
    f *= cplx{cfg.data_gradient_norm / std::sqrt(gradient_norm2(f)), 0.0};
  }
  return f;
}

namespace checks {

CheckOutput plancherel(const RunConfig& cfg) {
  CheckOutput out;
  const auto corpus = make_corpus(cfg.grid, Geometry::Hyperbolic, cfg.checks.corpus_size, cfg.seed);
  double roundtrip = 0.0, planch = 0.0, unitary = 0.0;
  for (const auto& f : corpus) {
    const RadialField back = helgason_inverse(helgason_forward(f));
    roundtrip = std::max(roundtrip, l2_distance(back, f) / std::sqrt(mass(f)));
    const PlancherelPair p = plancherel_check(f);
    planch = std::max(planch, rel(p.rhs, p.lhs));
    unitary = std::max(unitary, rel(mass(schrodinger_flow(1.0, f)), mass(f)));
  }
  out.verdicts.push_back(make_verdict("roundtrip_relative_l2", roundtrip, 1e-8));
  out.verdicts.push_back(make_verdict("plancherel_relative", planch, 1e-8));
  out.verdicts.push_back(make_verdict("linear_flow_l2_drift", unitary, 1e-12));
  out.details["corpus_size"] = corpus.size();
  return out;
}

CheckOutput lp_calculus(const RunConfig& cfg) {
  CheckOutput out;
  const auto corpus = make_corpus(cfg.grid, Geometry::Hyperbolic, cfg.checks.corpus_size, cfg.seed);
  double recon = 0.0;
  for (const auto& f : corpus) {
    const RadialField g = littlewood_paley_reconstruction(f, 1e-3, 1e4, 400);
    recon = std::max(recon, l2_distance(g, f) / std::sqrt(mass(f)));
  }
  double heat = 0.0;
  json per_z = json::array();
  for (double z : {0.05, 0.1, 0.5, 1.0}) {
    const RadialField a = heat_kernel_field(cfg.grid, z);
    const RadialField b = heat_kernel_spectral(cfg.grid, z);
    double diff = 0.0, scale = 0.0;
    for (int j = 0; j < cfg.grid.n; ++j) {
      diff = std::max(diff, std::abs(a.u(j) - b.u(j)));
      scale = std::max(scale, std::abs(a.u(j)));
    }
    heat = std::max(heat, diff / scale);
    per_z.push_back({{"z", z}, {"relative_sup_error", diff / scale}});
  }
  out.verdicts.push_back(make_verdict("reconstruction_relative_l2", recon, 1e-4));
  out.verdicts.push_back(make_verdict("heat_kernel_relative_sup", heat, 1e-6));
  out.details["reconstruction_constant"] = kReconstructionConstant;
  out.details["heat_kernel"] = per_z;
  return out;
}

CheckOutput conservation(const RunConfig& cfg) {
  CheckOutput out;
  const RadialField phi = initial_data(cfg);
  SolverConfig s = solver_config(cfg);
  s.record_every = 1;
  s.keep_snapshots = false;

  SolverConfig lin = s;
  lin.nonlinearity_on = false;
  const Trajectory tl = run_solver(phi, lin);
  double lin_drift = 0.0;
  for (std::size_t k = 1; k < tl.diagnostics.size(); ++k) {
    lin_drift = std::max(lin_drift, rel(tl.diagnostics[k].mass, tl.diagnostics[k - 1].mass));
  }

  // Every step is recorded at the base dt; the refined runs keep only the endpoints.
  s.keep_snapshots = true;
  const long steps = std::lround(s.t_end / s.dt);
  std::vector<RadialField> finals;
  std::vector<double> energy_drift, step_mass;
  for (int level = 0; level < 3; ++level) {
    SolverConfig c = s;
    c.dt = s.dt / (1 << level);
    c.record_every = level == 0 ? 1 : static_cast<int>(steps << level);
    const Trajectory t = run_solver(phi, c);
    const auto& d0 = t.diagnostics.front();
    double e = 0.0, m = 0.0;
    for (std::size_t k = 1; k < t.diagnostics.size(); ++k) {
      e = std::max(e, rel(t.diagnostics[k].energy, d0.energy));
      const double steps = (t.diagnostics[k].t - t.diagnostics[k - 1].t) / c.dt;
      m = std::max(m, std::abs(t.diagnostics[k].mass - t.diagnostics[k - 1].mass) / d0.mass /
                          std::max(1.0, std::round(steps)));
    }
    energy_drift.push_back(e);
    step_mass.push_back(m);
    finals.push_back(t.snapshots.back());
  }
  const double e1 = l2_distance(finals[0], finals[1]);
  const double e2 = l2_distance(finals[1], finals[2]);
  const double order = std::log2(e1 / e2);

  out.verdicts.push_back(make_verdict("linear_l2_drift_per_step", lin_drift, 1e-12));
  out.verdicts.push_back(make_verdict("mass_drift_per_step", step_mass[0], 1e-12));
  out.verdicts.push_back(make_verdict("energy_drift_relative", energy_drift[0], 1e-6));
  out.verdicts.push_back(make_verdict("convergence_order", 1.9, order));
  out.details["dt"] = {s.dt, s.dt / 2, s.dt / 4};
  out.details["energy_drift"] = energy_drift;
  out.details["mass_drift_per_step"] = step_mass;
  out.details["self_convergence_l2"] = {e1, e2};
  out.details["initial_energy"] = compute_energy(phi).energy;
  return out;
}

CheckOutput dispersive(const RunConfig& cfg) {
  CheckOutput out;
  const RadialGrid g(cfg.checks.dispersive_r_max, cfg.checks.dispersive_n);
  const auto times = log_spaced(cfg.checks.dispersive_t_min, cfg.checks.dispersive_t_max,
                                cfg.checks.dispersive_points);
  const DecayFit hyp = dispersive_decay_check(make_data(g, Geometry::Hyperbolic, cfg.data), times,
                                              cfg.checks.dispersive_p);
  const DecayFit euc = dispersive_decay_check(make_data(g, Geometry::Euclidean, cfg.data), times,
                                              cfg.checks.dispersive_p);
  out.verdicts.push_back(make_verdict("hyperbolic_decay_exponent", hyp.exponent, -0.9));
  out.verdicts.push_back(make_verdict("euclidean_exponent_deviation", std::abs(euc.exponent + 1.0), 0.1));
  out.details["times"] = times;
  out.details["hyperbolic_norms"] = hyp.norms;
  out.details["euclidean_norms"] = euc.norms;
  out.details["hyperbolic_exponent"] = hyp.exponent;
  out.details["euclidean_exponent"] = euc.exponent;
  return out;
}

CheckOutput morawetz(const RunConfig& cfg) {
  CheckOutput out;
  const RadialGrid& grid = cfg.grid;

  // (a) weight identities against five-point finite differences of the closed forms
  double grad_max = 0.0, lap_err = 0.0, bilap_err = 0.0;
  json bilap_scaled = json::object();  // max |Delta^2 a| / N^3, reported only
  for (double N : {1.0, 2.0, 4.0, 16.0}) {
    const MorawetzWeight w(N);
    double peak = 0.0;
    for (int j = 0; j < grid.n; ++j) grad_max = std::max(grad_max, w.grad_norm2(grid.r(j)));
    for (int i = 1; i <= 400; ++i) {
      const double r = 0.025 * i;
      lap_err = std::max(lap_err, std::abs(fd_radial_laplacian([&w](double x) { return w.a(x); }, r, 3e-4) -
                                           w.laplacian(r)));
      const double bl = w.bilaplacian(r);
      peak = std::max(peak, std::abs(bl));
      bilap_err = std::max(bilap_err, std::abs(fd_radial_laplacian([&w](double x) { return w.laplacian(x); }, r) - bl) /
                                          std::max(1.0, std::abs(bl)));
    }
    bilap_scaled[std::to_string(static_cast<int>(N))] = peak / (N * N * N);
  }
  out.details["max_bilaplacian_over_N3"] = bilap_scaled;
  out.verdicts.push_back(make_verdict("weight_gradient_sup", grad_max, 1.0));
  out.verdicts.push_back(make_verdict("weight_laplacian_error", lap_err, 1e-6));
  out.verdicts.push_back(make_verdict("weight_bilaplacian_error", bilap_err, 1e-6));

  // (b) derivative identity under refinement
  const RadialField phi = initial_data(cfg);
  const MorawetzWeight w(cfg.morawetz_N);
  std::vector<double> mismatch;
  for (int level = 0; level < 2; ++level) {
    SolverConfig s = solver_config(cfg);
    s.dt = cfg.dt / (1 << level);
    s.record_every = 1;
    mismatch.push_back(morawetz_identity_check(run_solver(phi, s), w, s.nonlinearity_on).max_relative_mismatch);
  }
  out.verdicts.push_back(make_verdict("identity_mismatch", mismatch[0], 0.03));
  out.verdicts.push_back(make_verdict("identity_refinement_ratio", mismatch[1] / mismatch[0], 0.5));
  out.details["identity_mismatch"] = mismatch;

  // (c) one-sided inequality on unit-energy nonlinear runs
  auto corpus = make_corpus(grid, Geometry::Hyperbolic, cfg.checks.morawetz_runs, cfg.seed);
  json runs = json::array();
  double worst = 0.0, best = kInf;
  for (auto& f : corpus) {
    SolverConfig s = solver_config(cfg);
    s.t_end = cfg.checks.morawetz_t_end;
    s.nonlinearity_on = true;
    s.record_every = std::max(1, cfg.record_every);
    const InequalityReport rep = morawetz_inequality_check(run_solver(normalize_energy(f, 1.0), s));
    worst = std::max(worst, rep.ratio);
    best = std::min(best, rep.ratio);
    runs.push_back({{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"ratio", rep.ratio}});
  }
  const FrozenConstants frozen = frozen_constants();
  out.verdicts.push_back(make_verdict("inequality_ratio", worst, 1.0, frozen.morawetz));
  const Baseline base = load_baseline(cfg.checks.baseline);
  if (base.present) out.verdicts.push_back(make_verdict("inequality_regression", worst, base.values.morawetz, 2.0));
  out.details["inequality_runs"] = runs;
  out.details["inequality_ratio_spread"] = best > 0.0 ? worst / best : kInf;
  return out;
}

CheckOutput scaling_limit(const RunConfig& cfg) {
  CheckOutput out;
  DataSpec spec = cfg.data;
  spec.family = "gaussian";
  spec.width = cfg.scaling_width;
  const RadialField phi =
      unit_gradient(make_data(cfg.scaling.euclidean_grid, Geometry::Euclidean, spec));

  auto one = [&](bool nonlinear, double eps, const std::string& name) {
    ScalingLimitConfig sc = cfg.scaling;
    sc.nonlinear = nonlinear;
    sc.epsilon = eps;
    const ScalingLimitResult r = scaling_limit_experiment(phi, sc);
    out.verdicts.push_back(make_verdict(name + "_non_increasing", r.non_increasing ? 0.0 : 1.0, 0.0));
    out.verdicts.push_back(make_verdict(name + "_final_sup_h1", r.rows.back().sup_h1_dist, eps));
    json rows = json::array();
    for (const auto& row : r.rows) {
      rows.push_back({{"N", row.N},
                      {"sup_h1_dist", row.sup_h1_dist},
                      {"strichartz_dist", row.strichartz_dist},
                      {"sup_h1_norm", row.sup_h1_norm}});
    }
    out.details[name] = rows;
    if (!cfg.output_dir.empty() && std::filesystem::is_directory(cfg.output_dir)) {
      write_scaling_csv(cfg.output_dir / ("scaling_" + name + ".csv"), r);
    }
  };
  one(cfg.scaling.nonlinear, cfg.scaling.epsilon, cfg.scaling.nonlinear ? "nonlinear" : "linear");
  if (cfg.scaling.nonlinear && cfg.scaling_linear_too) one(false, 1e-2, "linear");

  std::vector<double> err;
  for (double R : {5.0, 10.0, 20.0}) err.push_back(cutoff_error_norm(phi, R, cfg.scaling.T0));
  out.verdicts.push_back(make_verdict("cutoff_error_halving_5_10", err[1], err[0], 0.5));
  out.verdicts.push_back(make_verdict("cutoff_error_halving_10_20", err[2], err[1], 0.5));
  out.details["cutoff_error"] = err;
  return out;
}

CheckOutput extinction(const RunConfig& cfg) {
  CheckOutput out;
  DataSpec spec = cfg.data;
  spec.family = "gaussian";
  const RadialField psi = unit_gradient(make_data(cfg.extinction.euclidean_grid, Geometry::Euclidean, spec));
  const ExtinctionResult r = strichartz_extinction(psi, cfg.extinction);
  const double target = -1.0 / cfg.extinction.p;
  for (std::size_t i = 0; i < r.N_list.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "exponent_deviation_N%g", r.N_list[i]);
    out.verdicts.push_back(make_verdict(name, std::abs(r.exponents[i] - target), 0.15));
  }
  if (r.N_list.size() > 1) {
    out.verdicts.push_back(make_verdict("scale_invariance", r.max_scale_deviation, 0.05));
  }
  out.details["N"] = r.N_list;
  out.details["T1"] = r.T1_list;
  out.details["tails"] = r.tails;
  out.details["exponents"] = r.exponents;
  out.details["target_exponent"] = target;
  return out;
}

CheckOutput profiles(const RunConfig& cfg) {
  CheckOutput out;
  const auto& pc = cfg.profiles;
  const int K = pc.length;
  ExtractionOptions opts;
  opts.grid = ConcentrationGrid::standard(1024.0, 4, 1.0, 0.125);

  DataSpec hs = cfg.data;
  hs.family = "gaussian";
  hs.amplitude = pc.hyperbolic_amplitude;
  const RadialField psi = make_data(cfg.grid, Geometry::Hyperbolic, hs);
  DataSpec es;
  es.amplitude = pc.euclidean_amplitude;
  es.width = pc.euclidean_width;
  const RadialField phi = make_data(opts.euclidean_grid, Geometry::Euclidean, es);

  std::vector<double> ht, et, scales;
  for (int k = 0; k < K; ++k) {
    ht.push_back(pc.hyperbolic_time_span * k / (K - 1));
    et.push_back(0.0);
    scales.push_back(std::pow(2.0, k + 1));
  }
  const auto A = hyperbolic_profile_sequence(psi, ht);
  const auto B = euclidean_profile_sequence(phi, scales, et, cfg.grid);
  std::vector<RadialField> seq;
  for (int k = 0; k < K; ++k) seq.push_back(A[static_cast<std::size_t>(k)] + B[static_cast<std::size_t>(k)]);

  const ProfileDecomposition dec = full_decomposition(seq, pc.threshold, pc.j_max, opts);
  const DecouplingReport audit = decoupling_audit(dec, seq);

  const Frame truth_h = Frame::hyperbolic(ht);
  const Frame truth_e = Frame::euclidean(scales, et);
  const double energy_h = gradient_norm2(A.back());
  const double energy_e = gradient_norm2(B.back());
  double err_h = kInf, err_e = kInf;
  json found = json::array();
  for (const auto& p : dec.profiles) {
    const bool hyp = p.frame.kind == FrameKind::Hyperbolic;
    const Frame& truth = hyp ? truth_h : truth_e;
    const bool equiv = frames_equivalent(p.frame, truth);
    const double err = rel(p.free_energy, hyp ? energy_h : energy_e);
    if (equiv) (hyp ? err_h : err_e) = std::min(hyp ? err_h : err_e, err);
    found.push_back({{"kind", to_string(p.frame.kind)},
                     {"delta", p.delta},
                     {"free_energy", p.free_energy},
                     {"equivalent_to_truth", equiv},
                     {"scale_last", p.frame.N.back()},
                     {"time_last", p.frame.t.back()}});
  }
  const double bound = std::ceil(4.0 * dec.energy_budget / (pc.threshold * pc.threshold));
  out.verdicts.push_back(make_verdict("hyperbolic_profile_energy", err_h, 0.05));
  out.verdicts.push_back(make_verdict("euclidean_profile_energy", err_e, 0.05));
  out.verdicts.push_back(make_verdict("decoupling_residual", audit.relative_last, 0.05));
  out.verdicts.push_back(make_verdict("remainder_delta", dec.delta_history.back(), pc.threshold));
  out.verdicts.push_back(make_verdict("profile_count", static_cast<double>(dec.profiles.size()), bound));
  out.details["profiles"] = found;
  out.details["delta_history"] = dec.delta_history;
  out.details["energy_budget"] = dec.energy_budget;
  out.details["true_energies"] = {{"hyperbolic", energy_h}, {"euclidean", energy_e}};
  return out;
}

CheckOutput sobolev(const RunConfig& cfg) {
  CheckOutput out;
  const auto corpus = make_corpus(cfg.grid, Geometry::Hyperbolic, cfg.checks.corpus_size, cfg.seed);
  double sob = 0.0, smooth = 0.0;
  json rows = json::array();
  for (const auto& f : corpus) {
    const RefinedSobolevReport rs = refined_sobolev_check(f, cfg.checks.sobolev_n_max);
    // The smoothing bound is stated for ||psi||_{H^1} <= 1.
    RadialField unit = f;
    unit *= cplx{1.0 / h1_norm(f), 0.0};
    double ls = 0.0;
    for (double N : {1.0, 2.0, 4.0}) {
      for (double K : cfg.checks.smoothing_K) {
        if (K >= N) ls = std::max(ls, local_smoothing_check(unit, N, K).ratio);
      }
    }
    sob = std::max(sob, rs.ratio);
    smooth = std::max(smooth, ls);
    rows.push_back({{"refined_sobolev_ratio", rs.ratio}, {"local_smoothing_ratio", ls}});
  }
  const FrozenConstants frozen = frozen_constants();
  out.verdicts.push_back(make_verdict("refined_sobolev", sob, 1.0, frozen.refined_sobolev));
  out.verdicts.push_back(make_verdict("local_smoothing", smooth, 1.0, frozen.local_smoothing));
  const Baseline base = load_baseline(cfg.checks.baseline);
  if (base.present) {
    out.verdicts.push_back(make_verdict("refined_sobolev_regression", sob, base.values.refined_sobolev, 2.0));
    out.verdicts.push_back(make_verdict("local_smoothing_regression", smooth, base.values.local_smoothing, 2.0));
  }
  out.details["corpus"] = rows;
  out.details["max_refined_sobolev"] = sob;
  out.details["max_local_smoothing"] = smooth;
  return out;
}

}  // namespace checks

namespace {

CheckOutput run_simulate(const RunConfig& cfg) {
  CheckOutput out;
  const RadialField phi = initial_data(cfg);
  SolverConfig s = solver_config(cfg);
  s.keep_snapshots = cfg.write_trajectory;
  const Trajectory traj = run_solver(phi, s);
  write_diagnostics_csv(cfg.output_dir / "diagnostics.csv", traj);
  if (cfg.write_trajectory) {
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
      char name[64];
      std::snprintf(name, sizeof name, "snapshot_%05zu.bin", k);
      io::write_snapshot(traj.snapshots[k], cfg.output_dir / name);
    }
    io::write_csv(traj.snapshots.back(), cfg.output_dir / "final.csv");
  }
  const auto& d = traj.diagnostics;
  double mass_drift = 0.0, energy_drift = 0.0, z10 = 0.0;
  for (std::size_t k = 1; k < d.size(); ++k) {
    mass_drift = std::max(mass_drift, std::abs(d[k].mass - d[k - 1].mass) / d[0].mass /
                                          std::max(1.0, std::round((d[k].t - d[k - 1].t) / cfg.dt)));
    energy_drift = std::max(energy_drift, rel(d[k].energy, d[0].energy));
    z10 += d[k].z_increment;
  }
  out.verdicts.push_back(make_verdict("mass_drift_per_step", mass_drift, 1e-12));
  out.verdicts.push_back(make_verdict("energy_drift_relative", energy_drift, 1e-6));
  out.details["final"] = {{"t", d.back().t},
                          {"mass", d.back().mass},
                          {"energy", d.back().energy},
                          {"l6", d.back().l6},
                          {"z_norm", std::pow(z10, 0.1)},
                          {"boundary_mass", d.back().boundary_mass}};
  out.details["initial"] = {{"mass", d.front().mass}, {"energy", d.front().energy}};
  out.details["records"] = d.size();
  return out;
}

CheckOutput dispatch(const RunConfig& cfg, const RunOptions& opts);

CheckOutput run_sweep(const RunConfig& cfg, const RunOptions& opts) {
  const auto& values = cfg.sweep.values;
  std::vector<CheckOutput> results(values.size());
  std::vector<std::string> errors(values.size());
  std::atomic<std::size_t> next{0};
  std::mutex log;
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        IniMap raw = cfg.raw;
        raw["run.scenario"] = cfg.sweep.scenario;
        raw[cfg.sweep.parameter] = values[i];
        RunConfig sub = config_from_map(raw);
        sub.output_dir = cfg.output_dir / ("sweep_" + std::to_string(i));
        std::filesystem::create_directories(sub.output_dir);
        results[i] = dispatch(sub, opts);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
      if (opts.verbose) {
        std::lock_guard<std::mutex> lock(log);
        std::cerr << "sweep " << cfg.sweep.parameter << " = " << values[i] << " done\n";
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::clamp(opts.threads, 1, static_cast<int>(values.size()));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  CheckOutput out;
  json runs = json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!errors[i].empty()) throw Error("sweep run " + std::to_string(i) + ": " + errors[i]);
    runs.push_back({{"value", values[i]}, {"pass", results[i].pass()}});
    out.append(std::move(results[i]), "run" + std::to_string(i));
  }
  out.details["parameter"] = cfg.sweep.parameter;
  out.details["runs"] = runs;
  return out;
}

CheckOutput dispatch(const RunConfig& cfg, const RunOptions& opts) {
  const std::string& s = cfg.scenario;
  if (s == "simulate") {
    CheckOutput out = run_simulate(cfg);
    if (cfg.checks.conservation) out.append(checks::conservation(cfg), "conservation");
    return out;
  }
  if (s == "transform-selftest") {
    CheckOutput out;
    out.append(checks::plancherel(cfg), "plancherel");
    out.append(checks::lp_calculus(cfg), "lp_calculus");
    return out;
  }
  if (s == "dispersive-test") return checks::dispersive(cfg);
  if (s == "morawetz-test") return checks::morawetz(cfg);
  if (s == "sobolev-test") return checks::sobolev(cfg);
  if (s == "euclid-compare") {
    CheckOutput out;
    out.append(checks::scaling_limit(cfg), "scaling_limit");
    out.append(checks::extinction(cfg), "extinction");
    return out;
  }
  if (s == "profile-extract") return checks::profiles(cfg);
  if (s == "sweep") return run_sweep(cfg, opts);
  throw ScenarioUnknown("'" + s + "'; see `hnls list`");
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"simulate",       "transform-selftest", "dispersive-test",
                                              "morawetz-test",  "sobolev-test",       "euclid-compare",
                                              "profile-extract", "sweep"};
  return names;
}

json run_scenario(const RunConfig& config, const RunOptions& opts) {
  RunConfig cfg = config;
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  std::filesystem::create_directories(cfg.output_dir);
  const auto t0 = std::chrono::steady_clock::now();
  const CheckOutput out = dispatch(cfg, opts);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  json summary;
  summary["schema_version"] = kSummarySchemaVersion;
  summary["scenario"] = cfg.scenario;
  summary["seed"] = cfg.seed;
  summary["pass"] = out.pass();
  summary["verdicts"] = json::array();
  for (const auto& v : out.verdicts) summary["verdicts"].push_back(to_json(v));
  summary["details"] = out.details;
  write_json(cfg.output_dir / (cfg.scenario + "_summary.json"), summary);
  write_json(cfg.output_dir / (cfg.scenario + "_timing.json"),
             {{"schema_version", kSummarySchemaVersion}, {"runtime_seconds", seconds}});
  if (opts.verbose) {
    for (const auto& v : out.verdicts) {
      std::cerr << (v.pass ? "pass " : "FAIL ") << v.check << ": " << v.lhs << " vs " << v.constant
                << " * " << v.rhs << '\n';
    }
    std::cerr << cfg.scenario << " finished in " << seconds << " s\n";
  }
  return summary;
}

int run(const std::filesystem::path& config, const RunOptions& opts) {
  try {
    const RunConfig cfg = load_config(config);
    const json summary = run_scenario(cfg, opts);
    return summary.at("pass").get<bool>() ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hnls
