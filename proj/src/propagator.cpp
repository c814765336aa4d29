#include "hnls/propagator.hpp"

#include <cmath>
#include <cstdio>

#include "hnls/errors.hpp"
#include "hnls/field.hpp"
#include "hnls/morawetz.hpp"
#include "hnls/radial_transform.hpp"
#include "hnls/spectral_backend.hpp"

namespace hnls {

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigParse("dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigParse("t_end must be >= 0");
  if (record_every < 1) throw ConfigParse("record_every must be >= 1");
  if (!(boundary_tolerance > 0.0)) throw ConfigParse("boundary_tolerance must be positive");
  if (!(morawetz_N >= 1.0)) throw ConfigParse("morawetz_N must be >= 1");
}

RadialField nonlinear_phase(const RadialField& f, double dt) {
  if (dt == 0.0) return f;
  RadialField out = f;
  const auto& w = out.weights();
  auto h = out.h_mut();
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double a = std::abs(h[j]) * w.inv_w[j];
    const double a2 = a * a;
    h[j] *= std::polar(1.0, -a2 * a2 * dt);
  }
  return out;
}

double boundary_mass_fraction(const RadialField& f) {
  const auto h = f.h();
  const std::size_t start = h.size() - std::max<std::size_t>(1, h.size() / 20);
  double total = 0.0, outer = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double m = std::norm(h[j]);
    total += m;
    if (j >= start) outer += m;
  }
  return total > 0.0 ? outer / total : 0.0;
}

StrangStepper::StrangStepper(const RadialGrid& grid, Geometry geom, double dt, bool nonlinear,
                             double boundary_tolerance)
    : grid_(grid), geom_(geom), dt_(dt), nonlinear_(nonlinear),
      boundary_tolerance_(boundary_tolerance), half_(grid.size()), full_(grid.size()) {
  const double norm = 1.0 / (2.0 * (grid.n + 1));
  for (int m = 0; m < grid.n; ++m) {
    const double sym = laplacian_symbol(geom, grid.lambda(m));
    half_[static_cast<std::size_t>(m)] = norm * std::polar(1.0, -0.5 * dt * sym);
    full_[static_cast<std::size_t>(m)] = norm * std::polar(1.0, -dt * sym);
  }
}

void StrangStepper::apply_phase(RadialField& f, const std::vector<cplx>& phase) const {
  std::vector<cplx> H(f.size());
  backend::dst1(f.h(), H);
  for (std::size_t m = 0; m < H.size(); ++m) H[m] *= phase[m];
  backend::dst1(H, f.h_mut());
}

void StrangStepper::linear(RadialField& f, double fraction) const {
  apply_phase(f, fraction == 1.0 ? full_ : half_);
}

void StrangStepper::step(RadialField& f) const {
  require_same_grid(f.grid(), grid_, "StrangStepper::step");
  if (!nonlinear_) {
    apply_phase(f, full_);
  } else {
    apply_phase(f, half_);
    f = nonlinear_phase(f, dt_);
    apply_phase(f, half_);
  }
  const double bm = boundary_mass_fraction(f);
  if (bm > boundary_tolerance_) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "outer-shell mass fraction %.3e exceeds %.3e", bm,
                  boundary_tolerance_);
    throw BoundaryMassExceeded(msg);
  }
}

RadialField strang_step(const RadialField& f, double dt, bool nonlinear,
                        double boundary_tolerance) {
  StrangStepper stepper(f.grid(), f.geometry(), dt, nonlinear, boundary_tolerance);
  RadialField out = f;
  stepper.step(out);
  return out;
}

DiagnosticsRecord make_record(const RadialField& f, double t, double morawetz_N) {
  DiagnosticsRecord rec;
  rec.t = t;
  const EnergyReport e = compute_energy(f);
  rec.mass = e.mass;
  rec.energy = e.energy;
  rec.l6 = std::pow(6.0 * e.potential, 1.0 / 6.0);
  if (f.geometry() == Geometry::Hyperbolic) {
    rec.morawetz_action = morawetz_action(f, MorawetzWeight(morawetz_N));
  }
  rec.boundary_mass = boundary_mass_fraction(f);
  return rec;
}

namespace {

Trajectory run(const RadialField& phi, const SolverConfig& cfg, const StepObserver& observer) {
  cfg.validate();
  require_same_grid(phi.grid(), cfg.grid, "evolve");
  if (phi.geometry() != cfg.geometry) throw GridMismatch("data geometry differs from solver geometry");

  const StrangStepper stepper(cfg.grid, cfg.geometry, cfg.dt, cfg.nonlinearity_on,
                              cfg.boundary_tolerance);
  const long steps = std::lround(cfg.t_end / cfg.dt);
  Trajectory traj;
  RadialField u = phi;
  double prev_z_density = lp_integral(u, 10.0);

  auto record = [&](long k) {
    const double t = static_cast<double>(k) * cfg.dt;
    if (!u.all_finite()) throw NonFiniteState("non-finite state at t = " + std::to_string(t));
    DiagnosticsRecord rec = make_record(u, t, cfg.morawetz_N);
    const double z_density = lp_integral(u, 10.0);
    if (!traj.times.empty()) {
      rec.z_increment = 0.5 * (t - traj.times.back()) * (z_density + prev_z_density);
    }
    prev_z_density = z_density;
    traj.times.push_back(t);
    traj.diagnostics.push_back(rec);
    if (cfg.keep_snapshots) traj.snapshots.push_back(u);
    if (observer) observer(t, u);
  };

  record(0);
  for (long k = 1; k <= steps; ++k) {
    stepper.step(u);
    if (k % cfg.record_every == 0 || k == steps) record(k);
  }
  return traj;
}

}  // namespace

Trajectory evolve(const RadialField& phi, const SolverConfig& cfg, const StepObserver& observer) {
  return run(phi, cfg, observer);
}

Trajectory euclid_evolve(const RadialField& phi, const SolverConfig& cfg,
                         const StepObserver& observer) {
  if (phi.geometry() != Geometry::Euclidean || cfg.geometry != Geometry::Euclidean) {
    throw GridMismatch("euclid_evolve expects Euclidean data and configuration");
  }
  return run(phi, cfg, observer);
}

}  // namespace hnls
