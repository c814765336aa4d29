#pragma once

// Radial Fourier calculus on H^3 (and its Euclidean counterpart on R^3).
//
// Normalization. For radial f on H^3 the transform against the spherical
// function Phi_lambda(r) = sin(lambda r) / (lambda sinh r) reduces to
//
//     F(lambda) = (4 pi / lambda) * int_0^inf sin(lambda r) h(r) dr,   h = sinh(r) f(r),
//
// and the inversion density is |c(lambda)|^{-2} = lambda^2 / (2 pi^2). With the
// invariant measure d(mu) = 4 pi sinh^2 r dr this makes
//
//     int |f|^2 d(mu) = (1/2) int_R |F|^2 |c|^{-2} d(lambda) = int_0^inf |F|^2 lambda^2/(2 pi^2) d(lambda)
//
// hold exactly on the discrete grid (sine-transform Parseval). The Euclidean
// geometry uses the same formulas with sinh r replaced by r; the constant
// 1/(2 pi^2) is then the usual (2 pi)^{-3} times the area of S^2.

#include <functional>

#include "hnls/radial_field.hpp"

namespace hnls {

/// Inversion density |c(lambda)|^{-2} for the normalization above.
double plancherel_density(double lambda);

/// -Laplacian symbol: lambda^2 + 1 on H^3, lambda^2 on R^3.
double laplacian_symbol(Geometry geom, double lambda);

/// Constant c in f = c * int_0^inf N^{-1} P_N f dN; the multiplier of P_N
/// integrates to -1/2 against dN/N, so c = -2.
inline constexpr double kReconstructionConstant = -2.0;

/// Default relative tolerance for the boundary value of h in helgason_forward.
inline constexpr double kDefaultBoundaryTolerance = 1e-10;

SpectralField helgason_forward(const RadialField& f,
                               double boundary_tol = kDefaultBoundaryTolerance);
RadialField helgason_inverse(const SpectralField& F);

using Multiplier = std::function<cplx(double lambda)>;

SpectralField apply_multiplier(const Multiplier& m, const SpectralField& F);
/// Physical-side convenience: inverse(m * forward(f)) without the boundary check.
RadialField apply_multiplier(const Multiplier& m, const RadialField& f);

/// Multiplier symbol(lambda)^{s/2}; s in [-2, 4].
RadialField fractional_laplacian(double s, const RadialField& f);
/// e^{it Delta}: multiplier exp(-i t symbol(lambda)).
RadialField schrodinger_flow(double t, const RadialField& f);
/// e^{z Delta}, z >= 0.
RadialField heat_flow(double z, const RadialField& f);
/// P_N = N^{-2} Delta e^{N^{-2} Delta}.
RadialField littlewood_paley(double N, const RadialField& f);
/// Multiplier of P_N evaluated on a symbol value u = symbol(lambda).
double littlewood_paley_symbol(double N, double symbol);

/// Reconstruction kReconstructionConstant * int N^{-1} P_N f dN, discretized by
/// the trapezoid rule in ln N over [n_min, n_max] with `points` nodes.
RadialField littlewood_paley_reconstruction(const RadialField& f, double n_min, double n_max,
                                            int points);

/// Heat kernel on H^3: (4 pi z)^{-3/2} e^{-z} (r / sinh r) e^{-r^2 / 4z}.
double heat_kernel_closed_form(double z, double r);
/// Heat kernel sampled on the grid (hyperbolic geometry).
RadialField heat_kernel_field(const RadialGrid& grid, double z);
/// The same kernel built spectrally as the inverse transform of e^{-z(lambda^2+1)}.
RadialField heat_kernel_spectral(const RadialGrid& grid, double z);

/// Elementary spherical function on H^3 (closed form, Phi_lambda(0) = 1).
double spherical_function(double lambda, double r);

struct PlancherelPair {
  double lhs = 0.0;  // physical side
  double rhs = 0.0;  // spectral side
};

/// (int |f|^2 d mu, int |F|^2 |c|^{-2} d lambda) on the discrete grid.
PlancherelPair plancherel_check(const RadialField& f);
/// Bilinear version <f1, f2> on both sides.
std::pair<cplx, cplx> plancherel_inner(const RadialField& f1, const RadialField& f2);

/// Discrete L^2 pairing on the spectral side.
double spectral_norm2(const SpectralField& F, const std::function<double(double)>& weight);

/// Radial derivative h'(r) at the nodes, differentiating the sine series.
std::vector<cplx> h_derivative(const RadialField& f);
/// du/dr at the nodes.
std::vector<cplx> radial_gradient(const RadialField& f);

/// Evaluates the reduced profile h at arbitrary radii by 4x spectral
/// upsampling followed by cubic interpolation. Radii outside [0, r_max] give 0.
std::vector<cplx> evaluate_h(const RadialField& f, std::span<const double> radii);
/// Same, returning u = h / w at the given radii (geometry of f).
std::vector<cplx> evaluate_u(const RadialField& f, std::span<const double> radii);

}  // namespace hnls
