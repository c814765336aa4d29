#include "hnls/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hnls/errors.hpp"
#include "hnls/field.hpp"
#include "hnls/radial_transform.hpp"

namespace hnls {

namespace {

constexpr double kPi = std::numbers::pi;

double trapezoid(const std::vector<double>& t, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t k = 1; k < t.size(); ++k) acc += 0.5 * (t[k] - t[k - 1]) * (y[k] + y[k - 1]);
  return acc;
}

}  // namespace

MorawetzIdentityReport morawetz_identity_check(const Trajectory& traj, const MorawetzWeight& w,
                                               bool nonlinear) {
  MorawetzIdentityReport rep;
  const auto& snaps = traj.snapshots;
  if (snaps.size() < 3) return rep;
  std::vector<double> action(snaps.size());
  for (std::size_t k = 0; k < snaps.size(); ++k) action[k] = morawetz_action(snaps[k], w);
  double scale = 0.0, worst = 0.0;
  for (std::size_t k = 1; k + 1 < snaps.size(); ++k) {
    const double dt = traj.times[k + 1] - traj.times[k - 1];
    const double lhs = (action[k + 1] - action[k - 1]) / dt;
    const double rhs = morawetz_rhs(snaps[k], w, nonlinear).total();
    rep.times.push_back(traj.times[k]);
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    scale = std::max(scale, std::abs(rhs));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  rep.max_relative_mismatch = scale > 0.0 ? worst / scale : worst;
  return rep;
}

InequalityReport morawetz_inequality_check(const Trajectory& traj) {
  InequalityReport rep;
  std::vector<double> l6(traj.snapshots.size());
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    const RadialField& u = traj.snapshots[k];
    l6[k] = lp_integral(u, 6.0);
    rep.rhs = std::max(rep.rhs, std::sqrt(mass(u)) * h1_norm(u));
  }
  rep.lhs = trapezoid(traj.times, l6);
  rep.ratio = rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
  return rep;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = std::min(x.size(), y.size());
  if (n < 2) return 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lx = std::log(x[k]), ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dn = static_cast<double>(n);
  const double den = dn * sxx - sx * sx;
  return den != 0.0 ? (dn * sxy - sx * sy) / den : 0.0;
}

DecayFit dispersive_decay_check(const RadialField& phi, const std::vector<double>& times, double p) {
  if (!(p > 1.0 && p <= 2.0)) throw ConfigParse("dispersive exponent p must lie in (1, 2]");
  const double q = p / (p - 1.0);
  DecayFit fit;
  fit.times = times;
  for (double t : times) fit.norms.push_back(lp_norm(schrodinger_flow(t, phi), q));
  fit.exponent = loglog_slope(fit.times, fit.norms);
  return fit;
}

RefinedSobolevReport refined_sobolev_check(const RadialField& f, double n_max, int n_scales) {
  RefinedSobolevReport rep;
  rep.lhs = lp_norm(f, 6.0);
  rep.gradient = std::sqrt(gradient_norm2(f));
  const double step = n_scales > 1 ? std::log(n_max) / (n_scales - 1) : 0.0;
  for (int k = 0; k < n_scales; ++k) {
    const double N = std::exp(k * step);
    const double v = lp_norm(littlewood_paley(N, f), std::numeric_limits<double>::infinity()) /
                     std::sqrt(N);
    if (v > rep.sup_value) {
      rep.sup_value = v;
      rep.sup_N = N;
    }
  }
  const double denom = std::cbrt(rep.gradient) * std::pow(rep.sup_value, 2.0 / 3.0);
  rep.ratio = denom > 0.0 ? rep.lhs / denom : 0.0;
  return rep;
}

LocalSmoothingReport local_smoothing_check(const RadialField& psi, double N, double K,
                                           int time_points) {
  if (!(K >= N && N >= 1.0)) throw ConfigParse("local smoothing needs K >= N >= 1");
  LocalSmoothingReport rep;
  rep.bound = 1.0 / std::sqrt(N * K);
  const double T = 1.0 / (N * N);
  const double radius = 1.0 / N;
  const Geometry g = psi.geometry();
  const RadialField pk = littlewood_paley(K, psi);
  const auto& tab = *weight_table(psi.grid(), g);
  const double dr = psi.grid().dr();
  std::vector<double> times, density;
  for (int i = 0; i < time_points; ++i) {
    const double t = -T + 2.0 * T * i / (time_points - 1);
    const std::vector<cplx> grad = radial_gradient(schrodinger_flow(t, pk));
    double acc = 0.0;
    for (std::size_t j = 0; j < grad.size() && tab.r[j] <= radius; ++j) {
      acc += std::norm(grad[j]) * std::exp(2.0 * tab.log_w[j]);
    }
    times.push_back(t);
    density.push_back(4.0 * kPi * dr * acc);
  }
  rep.value = std::sqrt(trapezoid(times, density));
  rep.ratio = rep.value / rep.bound;
  return rep;
}

StrichartzNorms strichartz_accumulators(const std::vector<double>& times,
                                        const std::vector<RadialField>& fields) {
  StrichartzNorms out;
  if (fields.empty()) return out;
  std::vector<double> z(fields.size()), l6sq(fields.size()), grad(fields.size());
  for (std::size_t k = 0; k < fields.size(); ++k) {
    const RadialField& u = fields[k];
    z[k] = lp_integral(u, 10.0);
    l6sq[k] = std::pow(lp_integral(u, 6.0), 1.0 / 3.0);
    const std::vector<cplx> du = radial_gradient(u);
    grad[k] = std::pow(lp_norm_of_values(u.grid(), u.geometry(), du, 30.0 / 13.0), 10.0);
  }
  out.z = std::pow(trapezoid(times, z), 0.1);
  out.l2_l6 = std::sqrt(trapezoid(times, l6sq));
  out.l10_w130_13 = std::pow(trapezoid(times, grad), 0.1);
  return out;
}

StrichartzNorms strichartz_accumulators(const Trajectory& traj) {
  return strichartz_accumulators(traj.times, traj.snapshots);
}

std::vector<RadialField> make_corpus(const RadialGrid& grid, Geometry geom, int count,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  std::vector<RadialField> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    DataSpec spec;
    switch (i % 3) {
      case 0:
        spec.family = "gaussian";
        spec.width = draw(0.3, 2.0);
        break;
      case 1:
        spec.family = "shell";
        spec.center = draw(1.0, 4.0);
        spec.width = draw(0.3, 1.0);
        break;
      default:
        spec.family = "chirped";
        spec.width = draw(0.5, 2.0);
        spec.chirp = draw(-2.0, 2.0);
        break;
    }
    spec.amplitude = draw(0.2, 1.5);
    out.push_back(make_data(grid, geom, spec));
  }
  return out;
}

}  // namespace hnls
