#include "hnls/morawetz.hpp"

#include <cmath>
#include <numbers>

#include "hnls/errors.hpp"
#include "hnls/field.hpp"
#include "hnls/radial_transform.hpp"

namespace hnls {

namespace {
constexpr double kPi = std::numbers::pi;
}

MorawetzWeight::MorawetzWeight(double N) : N_(N), eps_(std::isinf(N) ? 0.0 : 1.0 / (N * N)) {
  if (!(N >= 1.0)) throw ScaleTooSmall("Morawetz weight needs N >= 1");
}

void MorawetzWeight::ratios(double r, double& c, double& s) const {
  const double t = std::tanh(r);
  const double sech = 1.0 / std::cosh(r);  // underflows to 0 for large r
  const double denom = std::sqrt(t * t + eps_ * sech * sech);
  c = 1.0 / denom;
  s = sech / denom;
}

double MorawetzWeight::a_tilde_prime(double y) const { return 1.0 / std::sqrt(y * y - 1.0 + eps_); }

double MorawetzWeight::a(double r) const {
  const double sh = std::sinh(r);
  return std::log(std::cosh(r) + std::sqrt(sh * sh + eps_));
}

double MorawetzWeight::da_dr(double r) const {
  double c, s;
  ratios(r, c, s);
  return std::tanh(r) * c;
}

double MorawetzWeight::d2a_dr2(double r) const {
  double c, s;
  ratios(r, c, s);
  return eps_ * c * s * s;
}

double MorawetzWeight::grad_norm2(double r) const {
  const double d = da_dr(r);
  return d * d;
}

double MorawetzWeight::laplacian(double r) const {
  // b = 2 y q^{-1/2} + eps y q^{-3/2} = 2c + eps c s^2
  double c, s;
  ratios(r, c, s);
  return 2.0 * c + eps_ * c * s * s;
}

double MorawetzWeight::bilaplacian(double r) const {
  double c, s;
  ratios(r, c, s);
  const double e = eps_;
  // sinh^2 r * b'' = (1 - eps s^2) [ (6 - 15 eps) c s^2 + 15 eps c^3 s^2 ]
  const double hess_part = (1.0 - e * s * s) * ((6.0 - 15.0 * e) * c * s * s + 15.0 * e * c * c * c * s * s);
  // 3 y b' = 3 [ (3 eps - 2) c s^2 - 3 eps c^3 s^2 ]
  const double grad_part = 3.0 * ((3.0 * e - 2.0) * c * s * s - 3.0 * e * c * c * c * s * s);
  return hess_part + grad_part;
}

double MorawetzWeight::hessian_lower_bound(double r) const {
  const double sh = std::sinh(r);
  const double q = sh * sh + eps_;
  return eps_ * std::cosh(r) * std::pow(q, -1.5);
}

double morawetz_action(const RadialField& u, const MorawetzWeight& w) {
  if (u.geometry() != Geometry::Hyperbolic) throw GridMismatch("Morawetz action is defined on H^3");
  const std::vector<cplx> dh = h_derivative(u);
  const auto h = u.h();
  const auto& tab = u.weights();
  double acc = 0.0;
  for (std::size_t j = 0; j < dh.size(); ++j) {
    acc += w.da_dr(tab.r[j]) * std::imag(std::conj(h[j]) * dh[j]);
  }
  return 8.0 * kPi * u.grid().dr() * acc;
}

MorawetzRhs morawetz_rhs(const RadialField& u, const MorawetzWeight& w, bool nonlinear) {
  if (u.geometry() != Geometry::Hyperbolic) throw GridMismatch("Morawetz identity is defined on H^3");
  const std::vector<cplx> dh = h_derivative(u);
  const auto h = u.h();
  const auto& tab = u.weights();
  double hess = 0.0, bilap = 0.0, pot = 0.0;
  for (std::size_t j = 0; j < dh.size(); ++j) {
    const double r = tab.r[j];
    hess += w.d2a_dr2(r) * std::norm(dh[j] - tab.dlog_w[j] * h[j]);
    bilap += w.bilaplacian(r) * std::norm(h[j]);
    if (nonlinear) {
      // |u|^6 sinh^2 r = |h|^6 / sinh^4 r
      const double m = std::norm(h[j]) * tab.inv_w[j] * tab.inv_w[j];
      pot += w.laplacian(r) * m * m * std::norm(h[j]);
    }
  }
  const double dr = u.grid().dr();
  return {16.0 * kPi * dr * hess, 4.0 * kPi * dr * bilap, 4.0 / 3.0 * 4.0 * kPi * dr * pot};
}

std::vector<double> spectral_weight_laplacian(const RadialGrid& grid, const MorawetzWeight& w,
                                              double r_cut) {
  RadialField chi_a = RadialField::from_function(grid, Geometry::Hyperbolic, [&](double r) {
    return cplx{cutoff_eta(1.0 + 0.6 * std::max(0.0, r - r_cut) / (0.6 * r_cut)) * w.a(r), 0.0};
  });
  // The cutoff argument is 1 at r_cut and 2 at 1.6 r_cut.
  const RadialField lap = apply_multiplier(
      [](double lambda) { return cplx{-(lambda * lambda + 1.0), 0.0}; }, chi_a);
  std::vector<double> out(grid.size());
  for (int j = 0; j < grid.n; ++j) out[static_cast<std::size_t>(j)] = lap.u(j).real();
  return out;
}

}  // namespace hnls
