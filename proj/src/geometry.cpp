#include "hnls/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "hnls/errors.hpp"

namespace hnls::geometry {

namespace {

constexpr std::array<double, 4> kSignature{-1.0, 1.0, 1.0, 1.0};  // I_{3,1}

Mat4 identity_matrix() {
  Mat4 m{};
  for (std::size_t i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

Vec4 mat_vec(const Mat4& m, const Vec4& v) {
  Vec4 out{};
  for (std::size_t i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < 4; ++j) acc += m[i][j] * v[j];
    out[i] = acc;
  }
  return out;
}

double determinant(const Mat4& m) {
  // Cofactor expansion along the first row over 3x3 minors.
  auto minor3 = [&](std::size_t skip_col) {
    std::array<std::array<double, 3>, 3> a{};
    for (std::size_t r = 1; r < 4; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < 4; ++c) {
        if (c == skip_col) continue;
        a[r - 1][cc++] = m[r][c];
      }
    }
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  double det = 0.0;
  for (std::size_t c = 0; c < 4; ++c) {
    const double sign = (c % 2 == 0) ? 1.0 : -1.0;
    det += sign * m[0][c] * minor3(c);
  }
  return det;
}

double max_abs(const Mat4& m) {
  double s = 0.0;
  for (const auto& row : m)
    for (double v : row) s = std::max(s, std::abs(v));
  return s;
}

double defect_of(const Mat4& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) acc += m[k][i] * kSignature[k] * m[k][j];
      const double target = (i == j) ? kSignature[i] : 0.0;
      worst = std::max(worst, std::abs(acc - target));
    }
  }
  return worst;
}

}  // namespace

Point Point::projected(const Vec4& raw) {
  const double q = minkowski_form(raw, raw);
  if (!(q > 0.0) || !(raw[0] > 0.0)) {
    throw InvalidGroupElement("vector is not on the future sheet of the hyperboloid");
  }
  const double scale = 1.0 / std::sqrt(q);
  Point p;
  for (std::size_t i = 0; i < 4; ++i) p.x[i] = raw[i] * scale;
  return p;
}

GroupElement::GroupElement() : m_(identity_matrix()) {}

GroupElement::GroupElement(const Mat4& m, double tol) : m_(m) {
  const double scale = std::max(1.0, max_abs(m));
  const double defect = defect_of(m) / (scale * scale);
  if (!(defect <= tol)) {
    throw InvalidGroupElement("m^T I m deviates from I by " + std::to_string(defect));
  }
  if (!(m[0][0] > 0.0)) throw InvalidGroupElement("m_00 must be positive");
  const double det = determinant(m);
  if (!(std::abs(det - 1.0) <= tol * std::pow(scale, 4))) {
    throw InvalidGroupElement("determinant " + std::to_string(det) + " != 1");
  }
}

GroupElement GroupElement::operator*(const GroupElement& other) const {
  Mat4 out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 4; ++k) acc += m_[i][k] * other.m_[k][j];
      out[i][j] = acc;
    }
  return GroupElement(out, Unchecked{});
}

GroupElement GroupElement::inverse() const {
  Mat4 out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i][j] = kSignature[i] * m_[j][i] * kSignature[j];
  return GroupElement(out, Unchecked{});
}

double GroupElement::lorentz_defect() const { return defect_of(m_); }

GroupElement GroupElement::reorthonormalized() const {
  std::array<Vec4, 4> col{};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) col[j][i] = m_[i][j];
  // Columns are orthonormal for the form with signature (+,-,-,-).
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      const double proj = minkowski_form(col[j], col[k]) / minkowski_form(col[k], col[k]);
      for (std::size_t i = 0; i < 4; ++i) col[j][i] -= proj * col[k][i];
    }
    const double norm2 = minkowski_form(col[j], col[j]);
    const double scale = 1.0 / std::sqrt(std::abs(norm2));
    for (std::size_t i = 0; i < 4; ++i) col[j][i] *= scale;
  }
  Mat4 out{};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 4; ++i) out[i][j] = col[j][i];
  return GroupElement(out, Unchecked{});
}

double minkowski_form(const Vec4& x, const Vec4& y) {
  return x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3];
}

double distance(const Point& p, const Point& q) {
  return std::acosh(std::max(1.0, minkowski_form(p, q)));
}

Point apply_isometry(const GroupElement& g, const Point& p) {
  return Point::projected(mat_vec(g.matrix(), p.x));
}

GroupElement boost(double s) {
  Mat4 m = identity_matrix();
  m[0][0] = std::cosh(s);
  m[0][1] = std::sinh(s);
  m[1][0] = std::sinh(s);
  m[1][1] = std::cosh(s);
  return GroupElement(m);
}

GroupElement rotation(const Vec3& axis, double angle) {
  const double len = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  const double kx = axis[0] / len, ky = axis[1] / len, kz = axis[2] / len;
  const double c = std::cos(angle), s = std::sin(angle), v = 1.0 - c;
  // Rodrigues formula on the spatial block.
  const std::array<std::array<double, 3>, 3> r{{
      {c + kx * kx * v, kx * ky * v - kz * s, kx * kz * v + ky * s},
      {ky * kx * v + kz * s, c + ky * ky * v, ky * kz * v - kx * s},
      {kz * kx * v - ky * s, kz * ky * v + kx * s, c + kz * kz * v},
  }};
  Mat4 m = identity_matrix();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i + 1][j + 1] = r[i][j];
  return GroupElement(m);
}

double cartan_abs(const GroupElement& g) { return std::acosh(std::max(1.0, g(0, 0))); }

Point chart_psi(const GroupElement& h, const Vec3& v) {
  const double v2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const Vec4 raw{std::sqrt(1.0 + v2), v[0], v[1], v[2]};
  Point p;
  p.x = mat_vec(h.matrix(), raw);
  return p;
}

Vec3 chart_psi_inv(const GroupElement& h, const Point& p) {
  const Vec4 y = mat_vec(h.inverse().matrix(), p.x);
  return {y[1], y[2], y[3]};
}

double measure_weight(const Vec3& v) {
  return 1.0 / std::sqrt(1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

Point iwasawa_chart(double v1, double v2, double s) {
  const double e = std::exp(-s);
  const double half = 0.5 * e * (v1 * v1 + v2 * v2);
  Point p;
  p.x = {std::cosh(s) + half, std::sinh(s) + half, e * v1, e * v2};
  return p;
}

}  // namespace hnls::geometry
