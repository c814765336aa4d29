#pragma once

// Norms, energies and the rescaling/translation operators acting on radial data.
//
// Measure: d(mu) = 4 pi sinh^2 r dr on H^3 and 4 pi r^2 dr on R^3.
// Sobolev norms always use the -Laplacian symbol of the geometry, so on H^3
// ||f||_{H^1} = ||(-Delta)^{1/2} f||_{L^2} with symbol lambda^2 + 1 (which also
// equals ||grad f||_{L^2}), while on R^3 it is the homogeneous norm.

#include <string>

#include "hnls/radial_field.hpp"

namespace hnls {

/// (int |u|^p d mu)^{1/p}; p = infinity returns max |u| over the nodes.
double lp_norm(const RadialField& f, double p);
/// int |u|^p d mu without the 1/p root.
double lp_integral(const RadialField& f, double p);
/// L^p norm of pointwise values v_j = v(r_j) using the measure of `geom`.
double lp_norm_of_values(const RadialGrid& grid, Geometry geom, std::span<const cplx> values,
                         double p);

/// ||(-Delta)^{1/2} f||_{L^2}.
double h1_norm(const RadialField& f);
/// int |grad u|^2 d mu.
double gradient_norm2(const RadialField& f);
/// int |u|^2 d mu.
double mass(const RadialField& f);
/// <(-Delta)^{1/2} f1, (-Delta)^{1/2} f2>, i.e. int grad f1 . conj(grad f2) d mu.
cplx h1_inner(const RadialField& f1, const RadialField& f2);

/// Conserved quantities. `kinetic` is (1/2) int |grad u|^2 and `potential` is
/// (1/6) int |u|^6, so energy = kinetic + potential.
struct EnergyReport {
  double mass = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  double energy = 0.0;
};

EnergyReport compute_energy(const RadialField& f);

/// Smooth radial cutoff: 1 on |x| <= 1, 0 on |x| >= 2.
double cutoff_eta(double x);

/// Q_N phi = eta(x / sqrt N) * (e^{Delta/N} phi), on the grid of phi (Euclidean).
RadialField regularize_q(const RadialField& phi, double N);

/// phi_N(x) = N^{1/2} (Q_N phi)(N x), sampled on `target` (Euclidean).
RadialField euclidean_rescaled(const RadialField& phi, double N, const RadialGrid& target);

/// T_N phi(y) = N^{1/2} (Q_N phi)(N Psi_I^{-1}(y)); radially Psi_I^{-1} has
/// length sinh r. Sampled on `target` (hyperbolic). Throws ScaleTooSmall for N < 1.
RadialField rescaled_profile(const RadialField& phi, double N, const RadialGrid& target);

/// Pi_{t0} f = e^{-i t0 Delta} f (translation part is the identity for radial data).
RadialField time_translate(const RadialField& f, double t0);

/// Radial data families used by scenarios and tests.
struct DataSpec {
  std::string family = "gaussian";  // gaussian | shell | chirped
  double amplitude = 1.0;
  double width = 1.0;
  double center = 0.0;  // shell radius
  double chirp = 0.0;   // phase exp(i chirp r^2)
};

RadialField make_data(const RadialGrid& grid, Geometry geom, const DataSpec& spec);

/// Scales f so that its energy equals `target` (energy is monotone in the amplitude).
RadialField normalize_energy(const RadialField& f, double target);

}  // namespace hnls
