#include <doctest.h>

#include <cmath>
#include <random>

#include "hnls/errors.hpp"
#include "hnls/geometry.hpp"
#include "oracles.hpp"

using namespace hnls::geometry;

namespace {

GroupElement random_isometry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const GroupElement k1 = rotation({u(rng), u(rng), u(rng)}, 3.0 * u(rng));
  const GroupElement k2 = rotation({u(rng), u(rng), u(rng)}, 3.0 * u(rng));
  return k1 * boost(2.0 * u(rng)) * k2;
}

}  // namespace

TEST_CASE("boost moves the origin by its parameter") {
  for (double s : {0.0, 0.3, 1.0, 4.5}) {
    const Point p = apply_isometry(boost(s), Point::origin());
    CHECK(distance(Point::origin(), p) == doctest::Approx(s).epsilon(1e-12));
    CHECK(p[0] == doctest::Approx(std::cosh(s)));
    CHECK(p[1] == doctest::Approx(std::sinh(s)));
  }
}

TEST_CASE("isometries preserve the form and distances") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const GroupElement g = random_isometry(rng);
    CHECK(g.lorentz_defect() < 1e-10);
    const Point p = chart_psi(GroupElement::identity(), {u(rng), u(rng), u(rng)});
    const Point q = chart_psi(GroupElement::identity(), {2 * u(rng), u(rng), -u(rng)});
    CHECK(minkowski_form(p, p) == doctest::Approx(1.0));
    CHECK(distance(apply_isometry(g, p), apply_isometry(g, q)) ==
          doctest::Approx(distance(p, q)).epsilon(1e-10));
  }
}

TEST_CASE("inverse and products") {
  std::mt19937_64 rng(9);
  const GroupElement g = random_isometry(rng);
  const GroupElement e = g * g.inverse();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(e(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("non-Lorentz matrices are rejected") {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
  m[0][1] = 0.5;
  CHECK_THROWS_AS(GroupElement{m}, hnls::InvalidGroupElement);
  m[0][1] = 0.0;
  m[0][0] = -1.0;
  m[1][1] = -1.0;
  CHECK_THROWS_AS(GroupElement{m}, hnls::InvalidGroupElement);  // time-reversing
}

TEST_CASE("Cartan parameter of k1 a_s k2") {
  for (double s : {0.0, 0.7, 2.0, 6.0}) {
    const GroupElement g = rotation({1, 2, 3}, 0.4) * boost(s) * rotation({0, 1, -1}, 2.2);
    CHECK(cartan_abs(g) == doctest::Approx(s).epsilon(1e-9));
  }
}

TEST_CASE("chart round trip and radial length") {
  std::mt19937_64 rng(3);
  const GroupElement h = random_isometry(rng);
  const Vec3 v{0.4, -1.3, 2.0};
  const Vec3 w = chart_psi_inv(h, chart_psi(h, v));
  for (int i = 0; i < 3; ++i) CHECK(w[static_cast<std::size_t>(i)] == doctest::Approx(v[static_cast<std::size_t>(i)]).epsilon(1e-10));
  // |Psi_I^{-1}(y)| = sinh d(0, y)
  const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  const double r = distance(Point::origin(), chart_psi(GroupElement::identity(), v));
  CHECK(std::sinh(r) == doctest::Approx(len));
}

TEST_CASE("chart measure integrates to the hyperbolic ball volume") {
  // int_{|v| < R} (1 + |v|^2)^{-1/2} dv = vol B(0, asinh R) = pi (sinh 2 rho - 2 rho)
  for (double R : {0.5, 2.0, 5.0}) {
    const double lhs = oracle::simpson(
        [](double t) { return 4 * oracle::pi * t * t * measure_weight({t, 0.0, 0.0}); }, 0.0, R);
    const double rho = std::asinh(R);
    CHECK(lhs == doctest::Approx(oracle::pi * (std::sinh(2 * rho) - 2 * rho)).epsilon(1e-9));
  }
}

TEST_CASE("Iwasawa coordinates satisfy the distance relation") {
  for (double s : {-1.0, 0.0, 0.5, 2.0})
    for (double v1 : {0.0, 0.7, -2.0})
      for (double v2 : {0.0, 1.1}) {
        const Point p = iwasawa_chart(v1, v2, s);
        CHECK(minkowski_form(p, p) == doctest::Approx(1.0).epsilon(1e-12));
        const double r = distance(Point::origin(), p);
        CHECK(std::cosh(r) ==
              doctest::Approx(std::cosh(s) + std::exp(-s) * (v1 * v1 + v2 * v2) / 2).epsilon(1e-10));
      }
}
