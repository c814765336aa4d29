#pragma once

// Comparison between hyperbolic solutions with concentrating data and
// transplanted Euclidean solutions.
//
// For a Euclidean profile phi and a scale N >= 1:
//   f_N(y)        = N^{1/2} (Q_N phi)(N Psi_I^{-1}(y))            (hyperbolic data)
//   V_{R,N}(y, t) = N^{1/2} eta(x/R) v(x, N^2 t),  x = N Psi_I^{-1}(y)
// where v solves the Euclidean equation with data Q_N phi. Radially
// |Psi_I^{-1}(y)| = sinh r.

#include <vector>

#include "hnls/propagator.hpp"
#include "hnls/radial_field.hpp"

namespace hnls {

/// N^{1/2} eta(|x|/R) v(x) at x = N sinh r, sampled on the hyperbolic `target`
/// grid. R = infinity disables the cutoff.
RadialField transplant(const RadialField& v, double N, double R, const RadialGrid& target);

/// Space-time sampler for V_{R,N} built from a Euclidean trajectory with snapshots.
class VrnSampler {
public:
  VrnSampler(const Trajectory& euclid, double R, double N, const RadialGrid& target);

  /// V_{R,N}(., t) for hyperbolic time t. Times between records are linearly
  /// interpolated; times outside the recorded range throw TimeOutOfRange.
  RadialField at(double t) const;

  double N() const { return N_; }
  double R() const { return R_; }

private:
  const Trajectory& traj_;
  double R_;
  double N_;
  RadialGrid target_;
};

inline VrnSampler build_vrn(const Trajectory& euclid, double R, double N, const RadialGrid& target) {
  return VrnSampler(euclid, R, N, target);
}

struct ScalingLimitConfig {
  double T0 = 1.0;
  double R = 10.0;
  std::vector<double> N_list{4.0, 8.0, 16.0, 32.0};
  bool nonlinear = true;
  double dt = 1e-3;  // Euclidean time step; the hyperbolic step is dt / N^2
  int record_every = 10;
  RadialGrid hyperbolic_grid{12.0, 16384};
  RadialGrid euclidean_grid{60.0, 4096};
  double epsilon = 5e-2;
};

struct ScalingLimitRow {
  double N = 0.0;
  double sup_h1_dist = 0.0;      // sup_t ||U_N - V_{R,N}||_{H^1}
  double strichartz_dist = 0.0;  // ||grad(U_N - V_{R,N})||_{L^2_t L^6_x}
  double sup_h1_norm = 0.0;      // sup_t ||U_N||_{H^1}, for scale
};

struct ScalingLimitResult {
  std::vector<ScalingLimitRow> rows;
  bool non_increasing = false;
  bool final_below_epsilon = false;
};

/// Runs forward in time on [0, T0 N^{-2}]; for real data the backward half is the
/// complex conjugate and gives the same distances.
ScalingLimitResult scaling_limit_experiment(const RadialField& phi, const ScalingLimitConfig& cfg);

/// ||grad e_R||_{L^2_t L^2_x(R^3 x (0, T0))} for the linear flow, where
/// e_R = (i d_t + Delta)(eta(x/R) v) and v = e^{it Delta} phi.
double cutoff_error_norm(const RadialField& phi, double R, double T0, int time_points = 101);

struct ExtinctionConfig {
  std::vector<double> N_list{256.0, 512.0};
  std::vector<double> T1_list{2.0, 4.0, 8.0, 16.0, 32.0};
  double p = 10.0;
  double q = 30.0 / 13.0;
  double t_max = 1.0;  // hyperbolic time at which the tail integral is truncated
  int points_per_decade = 40;
  RadialGrid hyperbolic_grid{100.0, 131072};
  RadialGrid euclidean_grid{60.0, 4096};
};

struct ExtinctionResult {
  std::vector<double> N_list;
  std::vector<double> T1_list;
  /// tails[i][k]: ||grad e^{it Delta} psi_N||_{L^p_t L^q_x} over |t| >= T1_k / N_i^2.
  std::vector<std::vector<double>> tails;
  std::vector<double> exponents;  // fitted slope in T1 per N
  double max_scale_deviation = 0.0;  // max relative difference between consecutive N rows
};

ExtinctionResult strichartz_extinction(const RadialField& psi, const ExtinctionConfig& cfg);

}  // namespace hnls
