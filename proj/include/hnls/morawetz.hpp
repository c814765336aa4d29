#pragma once

// Morawetz weight a(x) = a~(cosh r) on H^3 with a~'(y) = (y^2 - 1 + N^{-2})^{-1/2}.
//
// Writing eps = N^{-2} and q = sinh^2 r + eps:
//   da/dr        = sinh r / sqrt(q)                  (so |grad a|^2 = sinh^2 r / q <= 1)
//   d^2a/dr^2    = eps cosh r q^{-3/2}
//   Delta a      = b(cosh r),  b(y) = 3y q^{-1/2} - y(y^2-1) q^{-3/2} = 2y q^{-1/2} + eps y q^{-3/2}
//   Delta^2 a    = (y^2 - 1) b''(y) + 3y b'(y)
// For radial u the Morawetz action and its time derivative under the linear flow are
//   M(t)   = 2 Im int da/dr conj(u) du/dr d mu
//   dM/dt  = 4 int d^2a/dr^2 |du/dr|^2 d mu - int Delta^2 a |u|^2 d mu
// and the quintic nonlinearity adds (4/3) int Delta a |u|^6 d mu.

#include <limits>
#include <vector>

#include "hnls/radial_field.hpp"

namespace hnls {

class MorawetzWeight {
public:
  /// N >= 1; N = infinity gives the unregularized weight a = r.
  explicit MorawetzWeight(double N = 1.0);

  double N() const { return N_; }
  double eps() const { return eps_; }

  /// a~'(y).
  double a_tilde_prime(double y) const;
  /// a(r) = log(cosh r + sqrt(q)).
  double a(double r) const;
  double da_dr(double r) const;
  double d2a_dr2(double r) const;
  /// |grad a|^2 at radius r.
  double grad_norm2(double r) const;
  /// b(cosh r) = Delta a.
  double laplacian(double r) const;
  /// Delta(Delta a) at radius r.
  double bilaplacian(double r) const;
  /// Closed-form lower bound eps cosh r q^{-3/2} of the Hessian on radial directions.
  double hessian_lower_bound(double r) const;

private:
  // c = cosh r / sqrt(q), s = 1 / sqrt(q), written to avoid overflow for large r.
  void ratios(double r, double& c, double& s) const;
  double N_;
  double eps_;
};

double morawetz_action(const RadialField& u, const MorawetzWeight& w);

struct MorawetzRhs {
  double hessian = 0.0;      // 4 int a'' |u'|^2 d mu
  double bilaplacian = 0.0;  // int Delta^2 a |u|^2 d mu
  double potential = 0.0;    // (4/3) int Delta a |u|^6 d mu
  double total() const { return hessian - bilaplacian + potential; }
};

MorawetzRhs morawetz_rhs(const RadialField& u, const MorawetzWeight& w, bool nonlinear = true);

/// Delta a computed spectrally on the grid: the weight is multiplied by a smooth
/// cutoff equal to one on r <= r_cut and zero beyond 1.6 r_cut, then the radial
/// Laplacian is applied through the sine transform. Values are meaningful on r <= r_cut.
std::vector<double> spectral_weight_laplacian(const RadialGrid& grid, const MorawetzWeight& w,
                                              double r_cut);

}  // namespace hnls
