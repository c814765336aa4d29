#pragma once

// Numerical checks of the estimates used in the analysis: Morawetz identity and
// inequality, dispersive decay, refined Sobolev, local smoothing and the
// space-time norms Z = L^10_{t,x}, L^2_t L^6_x and L^10_t W^{1,30/13}_x.
//
// One-sided inequalities "A <~ B" are reported as the ratio A / B; the caller
// freezes the largest ratio over a corpus as the constant.

#include <cstdint>
#include <vector>

#include "hnls/morawetz.hpp"
#include "hnls/propagator.hpp"
#include "hnls/radial_field.hpp"

namespace hnls {

struct MorawetzIdentityReport {
  std::vector<double> times;      // interior record times
  std::vector<double> lhs;        // centered difference of M
  std::vector<double> rhs;        // right-hand side of the identity
  double max_relative_mismatch = 0.0;  // max |lhs - rhs| / max |rhs|
};

/// Needs a trajectory with snapshots; `nonlinear` selects the quintic term.
MorawetzIdentityReport morawetz_identity_check(const Trajectory& traj, const MorawetzWeight& w,
                                               bool nonlinear = true);

struct InequalityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs (0 when rhs = 0)
};

/// lhs = int int |u|^6 d mu dt (trapezoid over records), rhs = sup_t ||u||_2 ||u||_{H^1}.
InequalityReport morawetz_inequality_check(const Trajectory& traj);

struct DecayFit {
  std::vector<double> times;
  std::vector<double> norms;
  double exponent = 0.0;  // least-squares slope of log norm against log t
};

/// ||e^{it Delta} phi||_{L^{p'}} at the given times, p' = p / (p - 1), and the fitted slope.
DecayFit dispersive_decay_check(const RadialField& phi, const std::vector<double>& times, double p);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct RefinedSobolevReport {
  double lhs = 0.0;        // ||f||_{L^6}
  double gradient = 0.0;   // ||grad f||_{L^2}
  double sup_value = 0.0;  // sup_{N, r} N^{-1/2} |P_N f(r)|
  double sup_N = 0.0;      // scale attaining the sup
  double ratio = 0.0;      // lhs / (gradient^{1/3} sup_value^{2/3})
};

/// The sup over N runs over a log-spaced grid of `n_scales` values in [1, n_max].
RefinedSobolevReport refined_sobolev_check(const RadialField& f, double n_max = 256.0,
                                           int n_scales = 49);

struct LocalSmoothingReport {
  double value = 0.0;  // ||grad P_K e^{it Delta} psi||_{L^2(B(0,1/N) x (-1/N^2, 1/N^2))}
  double bound = 0.0;  // (N K)^{-1/2}
  double ratio = 0.0;
};

/// `time_points` nodes (odd) for the trapezoid rule in time.
LocalSmoothingReport local_smoothing_check(const RadialField& psi, double N, double K,
                                           int time_points = 41);

struct StrichartzNorms {
  double z = 0.0;            // ||u||_{L^10_{t,x}}
  double l2_l6 = 0.0;        // ||u||_{L^2_t L^6_x}
  double l10_w130_13 = 0.0;  // ||grad u||_{L^10_t L^{30/13}_x}
};

/// Trapezoid quadrature over the recorded snapshots.
StrichartzNorms strichartz_accumulators(const Trajectory& traj);
StrichartzNorms strichartz_accumulators(const std::vector<double>& times,
                                        const std::vector<RadialField>& fields);

/// Deterministic corpus of smooth radial data (bumps, shells, chirped bumps)
/// with randomized parameters drawn from `seed`.
std::vector<RadialField> make_corpus(const RadialGrid& grid, Geometry geom, int count,
                                     std::uint64_t seed);

}  // namespace hnls
