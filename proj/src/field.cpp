#include "hnls/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hnls/errors.hpp"
#include "hnls/radial_transform.hpp"

namespace hnls {

namespace {

constexpr double kPi = std::numbers::pi;

// |u|^p w^2 = exp(p log|h| + (2 - p) log w), robust when w over- or underflows.
double weighted_power_sum(std::span<const cplx> h, const WeightTable& w, double p) {
  double acc = 0.0;
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double a = std::abs(h[j]);
    if (a == 0.0) continue;
    acc += std::exp(p * std::log(a) + (2.0 - p) * w.log_w[j]);
  }
  return acc;
}

}  // namespace

double lp_integral(const RadialField& f, double p) {
  return 4.0 * kPi * f.grid().dr() * weighted_power_sum(f.h(), f.weights(), p);
}

double lp_norm(const RadialField& f, double p) {
  if (std::isinf(p)) {
    double best = 0.0;
    for (int j = 0; j < f.grid().n; ++j) best = std::max(best, std::abs(f.u(j)));
    return best;
  }
  return std::pow(lp_integral(f, p), 1.0 / p);
}

double lp_norm_of_values(const RadialGrid& grid, Geometry geom, std::span<const cplx> values,
                         double p) {
  const auto& w = *weight_table(grid, geom);
  if (std::isinf(p)) {
    double best = 0.0;
    for (const auto& v : values) best = std::max(best, std::abs(v));
    return best;
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double a = std::abs(values[j]);
    if (a == 0.0) continue;
    acc += std::exp(p * std::log(a) + 2.0 * w.log_w[j]);
  }
  return std::pow(4.0 * kPi * grid.dr() * acc, 1.0 / p);
}

double gradient_norm2(const RadialField& f) {
  const SpectralField F = helgason_forward(f, std::numeric_limits<double>::infinity());
  const Geometry g = f.geometry();
  return spectral_norm2(F, [g](double l) { return laplacian_symbol(g, l); });
}

double h1_norm(const RadialField& f) { return std::sqrt(gradient_norm2(f)); }

cplx h1_inner(const RadialField& f1, const RadialField& f2) {
  require_same_grid(f1.grid(), f2.grid(), "h1_inner");
  const double inf = std::numeric_limits<double>::infinity();
  const SpectralField F1 = helgason_forward(f1, inf);
  const SpectralField F2 = helgason_forward(f2, inf);
  const auto& grid = f1.grid();
  cplx acc{0.0, 0.0};
  for (int m = 0; m < grid.n; ++m) {
    const auto idx = static_cast<std::size_t>(m);
    const double l = grid.lambda(m);
    acc += F1.coeffs[idx] * std::conj(F2.coeffs[idx]) * laplacian_symbol(f1.geometry(), l) *
           plancherel_density(l);
  }
  return acc * grid.dlambda();
}

double mass(const RadialField& f) {
  double acc = 0.0;
  for (const auto& v : f.h()) acc += std::norm(v);
  return 4.0 * kPi * f.grid().dr() * acc;
}

EnergyReport compute_energy(const RadialField& f) {
  EnergyReport e;
  e.mass = mass(f);
  e.kinetic = 0.5 * gradient_norm2(f);
  e.potential = lp_integral(f, 6.0) / 6.0;
  e.energy = e.kinetic + e.potential;
  return e;
}

double cutoff_eta(double x) {
  const double a = std::abs(x);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  auto psi = [](double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; };
  const double inner = psi(2.0 - a);
  return inner / (inner + psi(a - 1.0));
}

RadialField regularize_q(const RadialField& phi, double N) {
  if (phi.geometry() != Geometry::Euclidean) {
    throw GridMismatch("regularize_q expects a Euclidean profile");
  }
  RadialField out = heat_flow(1.0 / N, phi);
  const double sqrt_n = std::sqrt(N);
  const auto& w = out.weights();
  auto h = out.h_mut();
  for (std::size_t j = 0; j < h.size(); ++j) h[j] *= cutoff_eta(w.r[j] / sqrt_n);
  return out;
}

RadialField euclidean_rescaled(const RadialField& phi, double N, const RadialGrid& target) {
  if (N < 1.0) throw ScaleTooSmall("N = " + std::to_string(N) + " < 1");
  const RadialField q = regularize_q(phi, N);
  std::vector<double> radii(target.size());
  for (int j = 0; j < target.n; ++j) radii[static_cast<std::size_t>(j)] = N * target.r(j);
  const std::vector<cplx> values = evaluate_u(q, radii);
  const double amp = std::sqrt(N);
  RadialField out(target, Geometry::Euclidean);
  auto h = out.h_mut();
  for (int j = 0; j < target.n; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    h[idx] = amp * values[idx] * target.r(j);
  }
  return out;
}

RadialField rescaled_profile(const RadialField& phi, double N, const RadialGrid& target) {
  if (N < 1.0) throw ScaleTooSmall("N = " + std::to_string(N) + " < 1");
  const RadialField q = regularize_q(phi, N);
  const auto& w = *weight_table(target, Geometry::Hyperbolic);
  std::vector<double> radii(target.size());
  for (std::size_t j = 0; j < radii.size(); ++j) {
    // N sinh r, capped: anything beyond the Euclidean grid is outside the cutoff.
    radii[j] = (w.r[j] > 50.0) ? std::numeric_limits<double>::infinity()
                               : N * std::sinh(w.r[j]);
  }
  const std::vector<cplx> values = evaluate_u(q, radii);
  const double amp = std::sqrt(N);
  std::vector<cplx> h(target.size());
  for (std::size_t j = 0; j < h.size(); ++j) {
    h[j] = (values[j] == cplx{0.0, 0.0}) ? cplx{0.0, 0.0}
                                          : amp * values[j] * std::exp(w.log_w[j]);
  }
  return RadialField(target, Geometry::Hyperbolic, std::move(h));
}

RadialField time_translate(const RadialField& f, double t0) { return schrodinger_flow(-t0, f); }

RadialField make_data(const RadialGrid& grid, Geometry geom, const DataSpec& spec) {
  const double a = spec.amplitude, s = spec.width, c = spec.center, k = spec.chirp;
  if (!(s > 0.0)) throw ConfigParse("data width must be positive");
  std::function<cplx(double)> u;
  if (spec.family == "gaussian") {
    u = [=](double r) { return cplx{a * std::exp(-(r * r) / (s * s)), 0.0}; };
  } else if (spec.family == "shell") {
    u = [=](double r) {
      const double x = (r - c) / s;
      return cplx{a * std::exp(-x * x), 0.0};
    };
  } else if (spec.family == "chirped") {
    u = [=](double r) { return a * std::exp(-(r * r) / (s * s)) * std::polar(1.0, k * r * r); };
  } else {
    throw ConfigParse("unknown data family '" + spec.family + "'");
  }
  return RadialField::from_function(grid, geom, u);
}

RadialField normalize_energy(const RadialField& f, double target) {
  const EnergyReport e = compute_energy(f);
  if (e.energy <= 0.0) return f;
  // E(s) = s^2 K + s^6 P, increasing in s > 0.
  double lo = 0.0, hi = 1.0;
  auto energy_at = [&](double s) { return s * s * e.kinetic + std::pow(s, 6) * e.potential; };
  while (energy_at(hi) < target) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (energy_at(mid) < target ? lo : hi) = mid;
  }
  RadialField out = f;
  out *= cplx{0.5 * (lo + hi), 0.0};
  return out;
}

}  // namespace hnls
