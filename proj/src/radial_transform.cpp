#include "hnls/radial_transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hnls/errors.hpp"
#include "hnls/spectral_backend.hpp"

namespace hnls {

namespace {

constexpr double kPi = std::numbers::pi;

// Sine-series coefficients H_m = int_0^{r_max} sin(lambda_m r) h(r) dr (rectangle rule,
// exact for the discrete sine basis).
std::vector<cplx> sine_coefficients(const RadialField& f) {
  std::vector<cplx> H(f.size());
  backend::dst1(f.h(), H);
  const double scale = 0.5 * f.grid().dr();
  for (auto& v : H) v *= scale;
  return H;
}

std::vector<cplx> profile_from_sine(const RadialGrid& grid, const std::vector<cplx>& H) {
  std::vector<cplx> h(H.size());
  backend::dst1(H, h);
  const double scale = 1.0 / grid.r_max;
  for (auto& v : h) v *= scale;
  return h;
}

SpectralField forward_unchecked(const RadialField& f) {
  std::vector<cplx> H = sine_coefficients(f);
  const auto& grid = f.grid();
  for (int m = 0; m < grid.n; ++m) H[static_cast<std::size_t>(m)] *= 4.0 * kPi / grid.lambda(m);
  return SpectralField{grid, f.geometry(), std::move(H)};
}

}  // namespace

double plancherel_density(double lambda) { return lambda * lambda / (2.0 * kPi * kPi); }

double laplacian_symbol(Geometry geom, double lambda) {
  return geom == Geometry::Hyperbolic ? lambda * lambda + 1.0 : lambda * lambda;
}

SpectralField helgason_forward(const RadialField& f, double boundary_tol) {
  double peak = 0.0;
  for (const auto& v : f.h()) peak = std::max(peak, std::abs(v));
  const double edge = std::abs(f.h().back());
  if (peak > 0.0 && edge > boundary_tol * peak) {
    throw NonDecayedBoundary("boundary value " + std::to_string(edge / peak) +
                             " of the peak exceeds tolerance");
  }
  return forward_unchecked(f);
}

RadialField helgason_inverse(const SpectralField& F) {
  if (F.coeffs.size() != F.grid.size()) throw GridMismatch("spectrum length does not match grid");
  std::vector<cplx> H(F.coeffs.size());
  for (int m = 0; m < F.grid.n; ++m) {
    const auto idx = static_cast<std::size_t>(m);
    H[idx] = F.coeffs[idx] * (F.grid.lambda(m) / (4.0 * kPi));
  }
  return RadialField(F.grid, F.geometry, profile_from_sine(F.grid, H));
}

SpectralField apply_multiplier(const Multiplier& m, const SpectralField& F) {
  SpectralField out = F;
  for (int k = 0; k < F.grid.n; ++k) {
    const cplx factor = m(F.grid.lambda(k));
    if (!std::isfinite(factor.real()) || !std::isfinite(factor.imag())) {
      throw NonFiniteMultiplier("multiplier is not finite at lambda = " +
                                std::to_string(F.grid.lambda(k)));
    }
    out.coeffs[static_cast<std::size_t>(k)] *= factor;
  }
  return out;
}

RadialField apply_multiplier(const Multiplier& m, const RadialField& f) {
  return helgason_inverse(apply_multiplier(m, forward_unchecked(f)));
}

RadialField fractional_laplacian(double s, const RadialField& f) {
  const Geometry g = f.geometry();
  return apply_multiplier(
      [g, s](double lambda) { return cplx{std::pow(laplacian_symbol(g, lambda), 0.5 * s), 0.0}; },
      f);
}

RadialField schrodinger_flow(double t, const RadialField& f) {
  if (t == 0.0) return f;
  const Geometry g = f.geometry();
  return apply_multiplier(
      [g, t](double lambda) { return std::polar(1.0, -t * laplacian_symbol(g, lambda)); }, f);
}

RadialField heat_flow(double z, const RadialField& f) {
  if (z == 0.0) return f;
  const Geometry g = f.geometry();
  return apply_multiplier(
      [g, z](double lambda) { return cplx{std::exp(-z * laplacian_symbol(g, lambda)), 0.0}; }, f);
}

double littlewood_paley_symbol(double N, double symbol) {
  const double u = symbol / (N * N);
  return -u * std::exp(-u);
}

RadialField littlewood_paley(double N, const RadialField& f) {
  const Geometry g = f.geometry();
  return apply_multiplier(
      [g, N](double lambda) {
        return cplx{littlewood_paley_symbol(N, laplacian_symbol(g, lambda)), 0.0};
      },
      f);
}

RadialField littlewood_paley_reconstruction(const RadialField& f, double n_min, double n_max,
                                            int points) {
  const Geometry g = f.geometry();
  const double a = std::log(n_min), b = std::log(n_max);
  const double step = (b - a) / (points - 1);
  return apply_multiplier(
      [=](double lambda) {
        const double sym = laplacian_symbol(g, lambda);
        double acc = 0.0;
        for (int k = 0; k < points; ++k) {
          const double w = (k == 0 || k == points - 1) ? 0.5 : 1.0;
          acc += w * littlewood_paley_symbol(std::exp(a + k * step), sym);
        }
        return cplx{kReconstructionConstant * acc * step, 0.0};
      },
      f);
}

double heat_kernel_closed_form(double z, double r) {
  const double ratio = (r == 0.0) ? 1.0 : r / std::sinh(r);
  return std::pow(4.0 * kPi * z, -1.5) * std::exp(-z) * ratio * std::exp(-r * r / (4.0 * z));
}

RadialField heat_kernel_field(const RadialGrid& grid, double z) {
  // h = sinh(r) K(r) = (4 pi z)^{-3/2} e^{-z} r e^{-r^2/4z}, sampled without overflow.
  RadialField out(grid, Geometry::Hyperbolic);
  auto h = out.h_mut();
  const double pref = std::pow(4.0 * kPi * z, -1.5) * std::exp(-z);
  for (int j = 0; j < grid.n; ++j) {
    const double r = grid.r(j);
    h[static_cast<std::size_t>(j)] = pref * r * std::exp(-r * r / (4.0 * z));
  }
  return out;
}

RadialField heat_kernel_spectral(const RadialGrid& grid, double z) {
  SpectralField F{grid, Geometry::Hyperbolic, std::vector<cplx>(grid.size())};
  for (int m = 0; m < grid.n; ++m) {
    const double l = grid.lambda(m);
    F.coeffs[static_cast<std::size_t>(m)] = std::exp(-z * (l * l + 1.0));
  }
  return helgason_inverse(F);
}

double spherical_function(double lambda, double r) {
  if (r == 0.0) return 1.0;
  if (lambda == 0.0) return r / std::sinh(r);
  return std::sin(lambda * r) / (lambda * std::sinh(r));
}

PlancherelPair plancherel_check(const RadialField& f) {
  const auto [lhs, rhs] = plancherel_inner(f, f);
  return {lhs.real(), rhs.real()};
}

std::pair<cplx, cplx> plancherel_inner(const RadialField& f1, const RadialField& f2) {
  require_same_grid(f1.grid(), f2.grid(), "plancherel_inner");
  const auto& grid = f1.grid();
  cplx lhs{0.0, 0.0};
  for (std::size_t j = 0; j < f1.size(); ++j) lhs += f1.h()[j] * std::conj(f2.h()[j]);
  lhs *= 4.0 * kPi * grid.dr();

  const SpectralField F1 = forward_unchecked(f1);
  const SpectralField F2 = forward_unchecked(f2);
  cplx rhs{0.0, 0.0};
  for (int m = 0; m < grid.n; ++m) {
    const auto idx = static_cast<std::size_t>(m);
    rhs += F1.coeffs[idx] * std::conj(F2.coeffs[idx]) * plancherel_density(grid.lambda(m));
  }
  rhs *= grid.dlambda();
  return {lhs, rhs};
}

double spectral_norm2(const SpectralField& F, const std::function<double(double)>& weight) {
  double acc = 0.0;
  for (int m = 0; m < F.grid.n; ++m) {
    const double l = F.grid.lambda(m);
    acc += std::norm(F.coeffs[static_cast<std::size_t>(m)]) * plancherel_density(l) * weight(l);
  }
  return acc * F.grid.dlambda();
}

std::vector<cplx> h_derivative(const RadialField& f) {
  const auto& grid = f.grid();
  std::vector<cplx> H = sine_coefficients(f);
  for (int m = 0; m < grid.n; ++m) H[static_cast<std::size_t>(m)] *= grid.lambda(m);
  std::vector<cplx> full(H.size() + 2);
  backend::dct1_from_interior(H, full);
  std::vector<cplx> out(H.size());
  const double scale = 1.0 / grid.r_max;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = full[j + 1] * scale;
  return out;
}

std::vector<cplx> radial_gradient(const RadialField& f) {
  std::vector<cplx> dh = h_derivative(f);
  const auto& w = f.weights();
  const auto h = f.h();
  for (std::size_t j = 0; j < dh.size(); ++j) {
    dh[j] = (dh[j] - w.dlog_w[j] * h[j]) * w.inv_w[j];
  }
  return dh;
}

std::vector<cplx> evaluate_h(const RadialField& f, std::span<const double> radii) {
  constexpr int kUpsample = 4;
  const auto& grid = f.grid();
  const int n_up = kUpsample * (grid.n + 1) - 1;
  std::vector<cplx> H = sine_coefficients(f);
  H.resize(static_cast<std::size_t>(n_up), cplx{0.0, 0.0});
  std::vector<cplx> fine(H.size());
  backend::dst1(H, fine);
  for (auto& v : fine) v *= 1.0 / grid.r_max;

  const double dr_up = grid.r_max / (n_up + 1);
  const int last = n_up + 1;  // index of r_max
  // Odd extension about r = 0 and r = r_max.
  auto sample = [&](int k) -> cplx {
    const int period = 2 * last;
    int m = ((k % period) + period) % period;
    double sign = 1.0;
    if (m > last) {
      m = period - m;
      sign = -1.0;
    }
    if (m == 0 || m == last) return {0.0, 0.0};
    return sign * fine[static_cast<std::size_t>(m - 1)];
  };

  std::vector<cplx> out(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (!(r >= 0.0) || r > grid.r_max) {
      out[i] = {0.0, 0.0};
      continue;
    }
    const double x = r / dr_up;
    const int k = std::min(static_cast<int>(std::floor(x)), last - 1);
    const double t = x - k;
    const double lm1 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    const double l0 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    const double l1 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    const double l2 = (t + 1.0) * t * (t - 1.0) / 6.0;
    out[i] = lm1 * sample(k - 1) + l0 * sample(k) + l1 * sample(k + 1) + l2 * sample(k + 2);
  }
  return out;
}

std::vector<cplx> evaluate_u(const RadialField& f, std::span<const double> radii) {
  std::vector<cplx> h = evaluate_h(f, radii);
  const bool hyperbolic = f.geometry() == Geometry::Hyperbolic;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    if (h[i] == cplx{0.0, 0.0}) continue;
    if (r < 1e-6) {
      // u(0) = h'(0); the interpolant is linear there to cubic accuracy
      const double eps = 1e-6;
      const double probe[1] = {eps};
      h[i] = evaluate_h(f, probe)[0] / eps;
      continue;
    }
    const double w = hyperbolic ? std::sinh(r) : r;
    h[i] /= w;
  }
  return h;
}

}  // namespace hnls
