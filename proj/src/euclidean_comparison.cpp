#include "hnls/euclidean_comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hnls/diagnostics.hpp"
#include "hnls/errors.hpp"
#include "hnls/field.hpp"
#include "hnls/radial_transform.hpp"

namespace hnls {

RadialField transplant(const RadialField& v, double N, double R, const RadialGrid& target) {
  if (v.geometry() != Geometry::Euclidean) throw GridMismatch("transplant expects a Euclidean field");
  if (N < 1.0) throw ScaleTooSmall("N = " + std::to_string(N) + " < 1");
  const auto& w = *weight_table(target, Geometry::Hyperbolic);
  const double x_cap = std::isinf(R) ? v.grid().r_max : std::min(2.0 * R, v.grid().r_max);
  std::vector<double> radii(target.size());
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double x = w.r[j] > 50.0 ? std::numeric_limits<double>::infinity() : N * std::sinh(w.r[j]);
    radii[j] = x <= x_cap ? x : std::numeric_limits<double>::infinity();
  }
  const std::vector<cplx> values = evaluate_u(v, radii);
  const double amp = std::sqrt(N);
  std::vector<cplx> h(target.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (values[j] == cplx{0.0, 0.0}) continue;
    const double cut = std::isinf(R) ? 1.0 : cutoff_eta(radii[j] / R);
    h[j] = amp * cut * values[j] * std::exp(w.log_w[j]);
  }
  return RadialField(target, Geometry::Hyperbolic, std::move(h));
}

VrnSampler::VrnSampler(const Trajectory& euclid, double R, double N, const RadialGrid& target)
    : traj_(euclid), R_(R), N_(N), target_(target) {
  if (euclid.snapshots.empty()) throw TimeOutOfRange("Euclidean trajectory has no snapshots");
  if (N < 1.0) throw ScaleTooSmall("N = " + std::to_string(N) + " < 1");
}

RadialField VrnSampler::at(double t) const {
  const double s = N_ * N_ * t;
  const auto& times = traj_.times;
  const double tol = 1e-9 * std::max(1.0, std::abs(times.back()));
  if (s < times.front() - tol || s > times.back() + tol) {
    throw TimeOutOfRange("t = " + std::to_string(t) + " outside the Euclidean trajectory");
  }
  auto it = std::lower_bound(times.begin(), times.end(), s - tol);
  const auto k = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - times.begin(),
                                                                   static_cast<std::ptrdiff_t>(times.size()) - 1));
  if (std::abs(times[k] - s) <= tol || k == 0) {
    return transplant(traj_.snapshots[k], N_, R_, target_);
  }
  const double theta = (s - times[k - 1]) / (times[k] - times[k - 1]);
  RadialField mix = traj_.snapshots[k - 1];
  mix *= cplx{1.0 - theta, 0.0};
  RadialField upper = traj_.snapshots[k];
  upper *= cplx{theta, 0.0};
  mix += upper;
  return transplant(mix, N_, R_, target_);
}

ScalingLimitResult scaling_limit_experiment(const RadialField& phi, const ScalingLimitConfig& cfg) {
  if (phi.geometry() != Geometry::Euclidean) throw GridMismatch("scaling limit expects a Euclidean profile");
  ScalingLimitResult result;
  const RadialField phi_e = phi.grid() == cfg.euclidean_grid
                                ? phi
                                : RadialField::from_function(cfg.euclidean_grid, Geometry::Euclidean,
                                                             [&](double r) {
                                                               const double rr[1] = {r};
                                                               return evaluate_u(phi, rr)[0];
                                                             });
  for (double N : cfg.N_list) {
    ScalingLimitRow row;
    row.N = N;

    SolverConfig ecfg;
    ecfg.dt = cfg.dt;
    ecfg.t_end = cfg.T0;
    ecfg.geometry = Geometry::Euclidean;
    ecfg.grid = cfg.euclidean_grid;
    ecfg.nonlinearity_on = cfg.nonlinear;
    ecfg.record_every = cfg.record_every;
    const Trajectory v = euclid_evolve(regularize_q(phi_e, N), ecfg);
    const VrnSampler sampler(v, cfg.R, N, cfg.hyperbolic_grid);

    SolverConfig hcfg = ecfg;
    hcfg.dt = cfg.dt / (N * N);
    hcfg.t_end = cfg.T0 / (N * N);
    hcfg.geometry = Geometry::Hyperbolic;
    hcfg.grid = cfg.hyperbolic_grid;
    hcfg.keep_snapshots = false;

    std::vector<double> times, grad_l6_sq;
    const RadialField f_n = rescaled_profile(phi_e, N, cfg.hyperbolic_grid);
    evolve(f_n, hcfg, [&](double t, const RadialField& u) {
      const RadialField diff = u - sampler.at(t);
      row.sup_h1_dist = std::max(row.sup_h1_dist, h1_norm(diff));
      row.sup_h1_norm = std::max(row.sup_h1_norm, h1_norm(u));
      const std::vector<cplx> g = radial_gradient(diff);
      const double l6 = lp_norm_of_values(diff.grid(), Geometry::Hyperbolic, g, 6.0);
      times.push_back(t);
      grad_l6_sq.push_back(l6 * l6);
    });
    double acc = 0.0;
    for (std::size_t k = 1; k < times.size(); ++k) {
      acc += 0.5 * (times[k] - times[k - 1]) * (grad_l6_sq[k] + grad_l6_sq[k - 1]);
    }
    row.strichartz_dist = std::sqrt(acc);
    result.rows.push_back(row);
  }
  result.non_increasing = true;
  for (std::size_t k = 1; k < result.rows.size(); ++k) {
    if (result.rows[k].sup_h1_dist > result.rows[k - 1].sup_h1_dist) result.non_increasing = false;
  }
  result.final_below_epsilon =
      !result.rows.empty() && result.rows.back().sup_h1_dist <= cfg.epsilon;
  return result;
}

double cutoff_error_norm(const RadialField& phi, double R, double T0, int time_points) {
  if (phi.geometry() != Geometry::Euclidean) throw GridMismatch("cutoff error expects a Euclidean profile");
  const auto& tab = phi.weights();
  auto laplacian = [](const RadialField& f) {
    return apply_multiplier([](double l) { return cplx{-l * l, 0.0}; }, f);
  };
  std::vector<double> times, density;
  for (int i = 0; i < time_points; ++i) {
    const double t = T0 * i / (time_points - 1);
    const RadialField v = schrodinger_flow(t, phi);
    RadialField vr = v;
    RadialField lap_v = laplacian(v);
    auto hr = vr.h_mut();
    auto hl = lap_v.h_mut();
    for (std::size_t j = 0; j < hr.size(); ++j) {
      const double eta = cutoff_eta(tab.r[j] / R);
      hr[j] *= eta;
      hl[j] *= eta;
    }
    const RadialField e = laplacian(vr) - lap_v;
    const std::vector<cplx> g = radial_gradient(e);
    const double n2 = lp_norm_of_values(e.grid(), Geometry::Euclidean, g, 2.0);
    times.push_back(t);
    density.push_back(n2 * n2);
  }
  double acc = 0.0;
  for (std::size_t k = 1; k < times.size(); ++k) {
    acc += 0.5 * (times[k] - times[k - 1]) * (density[k] + density[k - 1]);
  }
  return std::sqrt(acc);
}

ExtinctionResult strichartz_extinction(const RadialField& psi, const ExtinctionConfig& cfg) {
  if (psi.geometry() != Geometry::Euclidean) throw GridMismatch("extinction expects a Euclidean profile");
  ExtinctionResult result;
  result.N_list = cfg.N_list;
  result.T1_list = cfg.T1_list;
  const RadialField psi_e = psi.grid() == cfg.euclidean_grid
                                ? psi
                                : RadialField::from_function(cfg.euclidean_grid, Geometry::Euclidean,
                                                             [&](double r) {
                                                               const double rr[1] = {r};
                                                               return evaluate_u(psi, rr)[0];
                                                             });
  const double t1_min = *std::min_element(cfg.T1_list.begin(), cfg.T1_list.end());
  for (double N : cfg.N_list) {
    const RadialField data = rescaled_profile(psi_e, N, cfg.hyperbolic_grid);
    // Log-spaced samples from the smallest cut to t_max, with every cut included.
    const double lo = std::log10(t1_min / (N * N)), hi = std::log10(cfg.t_max);
    const int count = std::max(2, static_cast<int>(std::ceil((hi - lo) * cfg.points_per_decade)) + 1);
    std::vector<double> times;
    for (int i = 0; i < count; ++i) times.push_back(std::pow(10.0, lo + (hi - lo) * i / (count - 1)));
    for (double T1 : cfg.T1_list) times.push_back(T1 / (N * N));
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end(),
                            [](double a, double b) { return std::abs(a - b) <= 1e-12 * b; }),
                times.end());

    std::vector<double> g(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      const RadialField u = schrodinger_flow(times[i], data);
      const std::vector<cplx> du = radial_gradient(u);
      g[i] = std::pow(lp_norm_of_values(u.grid(), Geometry::Hyperbolic, du, cfg.q), cfg.p);
    }
    std::vector<double> row;
    for (double T1 : cfg.T1_list) {
      const double cut = T1 / (N * N);
      double acc = 0.0;
      for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i - 1] < cut * (1.0 - 1e-12)) continue;
        acc += 0.5 * (times[i] - times[i - 1]) * (g[i] + g[i - 1]);
      }
      row.push_back(std::pow(2.0 * acc, 1.0 / cfg.p));  // |t| >= cut, both signs
    }
    result.exponents.push_back(loglog_slope(cfg.T1_list, row));
    result.tails.push_back(std::move(row));
  }
  for (std::size_t i = 1; i < result.tails.size(); ++i) {
    for (std::size_t k = 0; k < result.tails[i].size(); ++k) {
      const double a = result.tails[i - 1][k], b = result.tails[i][k];
      result.max_scale_deviation = std::max(result.max_scale_deviation, std::abs(a - b) / b);
    }
  }
  return result;
}

}  // namespace hnls
