#pragma once

// Time stepping for i u_t + Delta u = u |u|^4 on H^3 or R^3 (radial sector).
//
// One Strang step is L(dt/2) o N(dt) o L(dt/2), where L is the exact linear
// flow (a spectral multiplier) and N(dt) u = u exp(-i |u|^4 dt) solves the
// pointwise ODE i u_t = u |u|^4. Both pieces are L^2 isometries.

#include <functional>
#include <vector>

#include "hnls/radial_field.hpp"

namespace hnls {

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Geometry geometry = Geometry::Hyperbolic;
  RadialGrid grid;
  bool nonlinearity_on = true;
  int record_every = 1;
  /// Abort when the relative mass in the outer 5% of the grid exceeds this.
  double boundary_tolerance = 1e-8;
  /// Regularization scale of the Morawetz weight used for the action column.
  double morawetz_N = 1.0;
  bool keep_snapshots = true;

  void validate() const;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double l6 = 0.0;
  /// int over [t_prev, t] of int |u|^10 d mu, trapezoid in time (0 for the first record).
  double z_increment = 0.0;
  double morawetz_action = 0.0;
  double boundary_mass = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<RadialField> snapshots;  // empty when keep_snapshots is off
  std::vector<DiagnosticsRecord> diagnostics;
};

/// u -> u exp(-i |u|^4 dt), pointwise.
RadialField nonlinear_phase(const RadialField& f, double dt);

/// Fraction of the mass carried by the outer 5% of the nodes.
double boundary_mass_fraction(const RadialField& f);

/// Precomputed linear half-step and Strang step for a fixed grid, geometry and dt.
class StrangStepper {
public:
  StrangStepper(const RadialGrid& grid, Geometry geom, double dt, bool nonlinear = true,
                double boundary_tolerance = 1e-8);

  /// Advances f by one step in place. Throws BoundaryMassExceeded.
  void step(RadialField& f) const;
  /// Exact linear flow by `fraction` * dt in place (fraction in {0.5, 1}).
  void linear(RadialField& f, double fraction) const;

  double dt() const { return dt_; }

private:
  void apply_phase(RadialField& f, const std::vector<cplx>& phase) const;
  RadialGrid grid_;
  Geometry geom_;
  double dt_;
  bool nonlinear_;
  double boundary_tolerance_;
  std::vector<cplx> half_;  // exp(-i symbol dt/2) / (2(n+1))
  std::vector<cplx> full_;
};

/// One Strang step with the default boundary tolerance.
RadialField strang_step(const RadialField& f, double dt, bool nonlinear = true,
                        double boundary_tolerance = 1e-8);

DiagnosticsRecord make_record(const RadialField& f, double t, double morawetz_N);

using StepObserver = std::function<void(double t, const RadialField& u)>;

/// Integrates from t = 0 to cfg.t_end. The observer (if any) is called at every
/// recorded time. Throws BoundaryMassExceeded, NonFiniteState.
Trajectory evolve(const RadialField& phi, const SolverConfig& cfg,
                  const StepObserver& observer = {});
/// Same as evolve, for Euclidean data.
Trajectory euclid_evolve(const RadialField& phi, const SolverConfig& cfg,
                         const StepObserver& observer = {});

}  // namespace hnls
