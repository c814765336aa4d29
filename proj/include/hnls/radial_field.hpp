#pragma once

// Radial fields on a uniform Dirichlet grid.
//
// A radial function u(r) is stored through its reduced profile h(r) = w(r) u(r)
// with w = sinh r on H^3 and w = r on R^3. In these variables the radial
// Laplacian becomes d^2/dr^2 - 1 (resp. d^2/dr^2), which the discrete sine
// transform diagonalizes.

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hnls {

using cplx = std::complex<double>;

enum class Geometry { Hyperbolic, Euclidean };

const char* to_string(Geometry g);
Geometry geometry_from_string(const std::string& s);

/// Uniform grid r_j = j dr, j = 1..n, dr = r_max / (n + 1). Values vanish at
/// r = 0 and r = r_max.
struct RadialGrid {
  double r_max = 30.0;
  int n = 4096;

  RadialGrid() = default;
  RadialGrid(double r_max_, int n_);

  double dr() const { return r_max / (n + 1); }
  /// Node radius for 0-based index j (radius (j+1) dr).
  double r(int j) const { return (j + 1) * dr(); }
  /// Dual frequency for 0-based index m (frequency (m+1) pi / r_max).
  double lambda(int m) const;
  double dlambda() const;
  std::size_t size() const { return static_cast<std::size_t>(n); }

  bool operator==(const RadialGrid& o) const { return r_max == o.r_max && n == o.n; }
  bool operator!=(const RadialGrid& o) const { return !(*this == o); }
};

/// Per-node geometric tables shared between all fields on the same grid.
struct WeightTable {
  std::vector<double> r;
  std::vector<double> inv_w;   // 1 / w(r_j), underflows to 0 far out
  std::vector<double> log_w;   // log w(r_j), finite for every node
  std::vector<double> dlog_w;  // w'/w: coth r or 1/r
};

std::shared_ptr<const WeightTable> weight_table(const RadialGrid& grid, Geometry geom);

void require_same_grid(const RadialGrid& a, const RadialGrid& b, const char* where);

class RadialField {
public:
  RadialField() = default;
  RadialField(const RadialGrid& grid, Geometry geom);
  RadialField(const RadialGrid& grid, Geometry geom, std::vector<cplx> h);

  /// Samples u at the nodes.
  static RadialField from_function(const RadialGrid& grid, Geometry geom,
                                   const std::function<cplx(double)>& u);

  const RadialGrid& grid() const { return grid_; }
  Geometry geometry() const { return geom_; }
  std::span<const cplx> h() const { return h_; }
  std::span<cplx> h_mut() { return h_; }
  std::size_t size() const { return h_.size(); }

  const WeightTable& weights() const { return *weights_; }
  cplx u(int j) const;
  std::vector<cplx> u_values() const;

  RadialField conj() const;
  RadialField& operator+=(const RadialField& o);
  RadialField& operator-=(const RadialField& o);
  RadialField& operator*=(cplx s);
  friend RadialField operator+(RadialField a, const RadialField& b) { return a += b; }
  friend RadialField operator-(RadialField a, const RadialField& b) { return a -= b; }
  friend RadialField operator*(cplx s, RadialField a) { return a *= s; }

  bool all_finite() const;

private:
  RadialGrid grid_;
  Geometry geom_ = Geometry::Hyperbolic;
  std::vector<cplx> h_;
  std::shared_ptr<const WeightTable> weights_;
};

/// Transform-side coefficients F(lambda_m), m = 1..n.
struct SpectralField {
  RadialGrid grid;
  Geometry geometry = Geometry::Hyperbolic;
  std::vector<cplx> coeffs;
};

}  // namespace hnls
