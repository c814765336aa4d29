#pragma once

// Hyperboloid model of H^3 inside Minkowski R^{3,1}.
//
// Points satisfy [x,x] = 1, x^0 > 0 with [x,y] = x^0 y^0 - x^1 y^1 - x^2 y^2 - x^3 y^3.
// Isometries are the matrices of SO_e(3,1) acting by matrix-vector product.

#include <array>

namespace hnls::geometry {

using Vec4 = std::array<double, 4>;
using Vec3 = std::array<double, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

/// A point of the hyperboloid sheet.
struct Point {
  Vec4 x{1.0, 0.0, 0.0, 0.0};

  static Point origin() { return {}; }
  /// Wraps raw coordinates and rescales them onto [x,x] = 1.
  static Point projected(const Vec4& raw);

  double operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
};

/// An element of SO_e(3,1).
class GroupElement {
public:
  GroupElement();  // identity
  /// Validates the Lorentz invariants; throws InvalidGroupElement when the
  /// deviation exceeds `tol` relative to the squared matrix scale.
  explicit GroupElement(const Mat4& m, double tol = 1e-8);

  static GroupElement identity() { return {}; }

  const Mat4& matrix() const { return m_; }
  double operator()(int i, int j) const {
    return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  GroupElement operator*(const GroupElement& other) const;
  /// Inverse via I_{3,1} m^T I_{3,1}; exact in exact arithmetic.
  GroupElement inverse() const;

  /// Largest entrywise deviation of m^T I m from I (absolute).
  double lorentz_defect() const;

  /// Minkowski Gram-Schmidt on the columns; removes accumulated drift.
  GroupElement reorthonormalized() const;

private:
  struct Unchecked {};
  GroupElement(const Mat4& m, Unchecked) : m_(m) {}
  Mat4 m_;
};

double minkowski_form(const Vec4& x, const Vec4& y);
inline double minkowski_form(const Point& p, const Point& q) { return minkowski_form(p.x, q.x); }

/// Hyperbolic distance, arccosh of the clamped pairing.
double distance(const Point& p, const Point& q);

/// h . p, re-projected onto the hyperboloid.
Point apply_isometry(const GroupElement& g, const Point& p);

/// The one-parameter boost a_s in the (x^0, x^1) plane.
GroupElement boost(double s);

/// Rotation of the spatial coordinates about `axis` (need not be normalized).
GroupElement rotation(const Vec3& axis, double angle);

/// The A_+ component s of the Cartan factorization g = k1 a_s k2.
double cartan_abs(const GroupElement& g);

/// Chart R^3 -> H^3, v -> h . (sqrt(1 + |v|^2), v).
Point chart_psi(const GroupElement& h, const Vec3& v);
/// Spatial part of h^{-1} . p.
Vec3 chart_psi_inv(const GroupElement& h, const Point& p);

/// Density of the invariant measure in the chart Psi_I: (1 + |v|^2)^{-1/2}.
double measure_weight(const Vec3& v);

/// Iwasawa coordinates (v1, v2, s) -> H^3; satisfies cosh r = cosh s + e^{-s}|v|^2/2
/// where r is the distance to the origin.
Point iwasawa_chart(double v1, double v2, double s);

}  // namespace hnls::geometry
