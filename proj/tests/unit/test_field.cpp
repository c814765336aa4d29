#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "hnls/errors.hpp"
#include "hnls/field.hpp"
#include "hnls/field_io.hpp"
#include "hnls/radial_transform.hpp"
#include "oracles.hpp"

using namespace hnls;
using oracle::pi;

namespace {

const RadialGrid kGrid{30.0, 4096};

RadialField gauss(Geometry g, double amp = 1.0) {
  return RadialField::from_function(kGrid, g, [amp](double r) { return cplx{amp * std::exp(-r * r), 0.0}; });
}

std::filesystem::path tmp(const char* name) {
  return std::filesystem::temp_directory_path() / (std::string("hnls_test_") + name);
}

}  // namespace

TEST_CASE("Euclidean gaussian Lp norms") {
  const RadialField f = gauss(Geometry::Euclidean);
  for (double p : {1.0, 2.0, 3.0, 6.0, 10.0}) {
    CHECK(lp_integral(f, p) == doctest::Approx(std::pow(pi / p, 1.5)).epsilon(1e-9));
    CHECK(lp_norm(f, p) == doctest::Approx(std::pow(pi / p, 1.5 / p)).epsilon(1e-9));
  }
  CHECK(lp_norm(f, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("hyperbolic norms against quadrature") {
  const RadialField f = gauss(Geometry::Hyperbolic, 0.7);
  const double grad2 =
      oracle::hyperbolic_integral([](double r) { return 0.49 * 4 * r * r * std::exp(-2 * r * r); }, 12.0);
  CHECK(gradient_norm2(f) == doctest::Approx(grad2).epsilon(1e-8));
  CHECK(h1_norm(f) * h1_norm(f) == doctest::Approx(grad2).epsilon(1e-8));
  CHECK(h1_inner(f, f).real() == doctest::Approx(grad2).epsilon(1e-8));

  const double m = oracle::hyperbolic_integral([](double r) { return 0.49 * std::exp(-2 * r * r); }, 12.0);
  const double l6 = oracle::hyperbolic_integral([](double r) { return std::pow(0.7, 6) * std::exp(-6 * r * r); }, 12.0);
  const EnergyReport e = compute_energy(f);
  CHECK(e.mass == doctest::Approx(m).epsilon(1e-9));
  CHECK(e.kinetic == doctest::Approx(grad2 / 2).epsilon(1e-8));
  CHECK(e.potential == doctest::Approx(l6 / 6).epsilon(1e-8));
  CHECK(e.energy == doctest::Approx(e.kinetic + e.potential));
}

TEST_CASE("normalize_energy hits the target") {
  const RadialField f = gauss(Geometry::Hyperbolic, 3.0);
  for (double target : {0.1, 1.0, 5.0}) CHECK(compute_energy(normalize_energy(f, target)).energy == doctest::Approx(target).epsilon(1e-10));
}

TEST_CASE("cutoff profile") {
  CHECK(cutoff_eta(0.0) == 1.0);
  CHECK(cutoff_eta(1.0) == 1.0);
  CHECK(cutoff_eta(2.0) == 0.0);
  CHECK(cutoff_eta(5.0) == 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = cutoff_eta(1.0 + i / 100.0);
    CHECK(v <= prev + 1e-15);
    CHECK(v >= 0.0);
    prev = v;
  }
  // smooth: centered second difference stays bounded across the transition
  const double h = 1e-3;
  for (double x : {1.0005, 1.5, 1.9995})
    CHECK(std::abs(cutoff_eta(x + h) - 2 * cutoff_eta(x) + cutoff_eta(x - h)) / (h * h) < 50.0);
}

TEST_CASE("time translation is the backward linear flow") {
  const RadialField f = gauss(Geometry::Hyperbolic);
  const RadialField g = time_translate(f, 0.6);
  const RadialField back = time_translate(g, -0.6);
  const RadialField ref = schrodinger_flow(-0.6, f);
  double d1 = 0.0, d2 = 0.0;
  for (int j = 0; j < kGrid.n; ++j) {
    d1 = std::max(d1, std::abs(back.u(j) - f.u(j)));
    d2 = std::max(d2, std::abs(g.u(j) - ref.u(j)));
  }
  CHECK(d1 < 1e-12);
  CHECK(d2 < 1e-14);
}

TEST_CASE("Euclidean rescaling preserves the homogeneous gradient norm") {
  const RadialField phi = gauss(Geometry::Euclidean);
  const RadialGrid target{30.0, 16384};
  const double ref = std::sqrt(gradient_norm2(regularize_q(phi, 4.0)));
  const RadialField phiN = euclidean_rescaled(phi, 4.0, target);
  CHECK(std::sqrt(gradient_norm2(phiN)) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("hyperbolic rescaled profiles approach the Euclidean gradient norm") {
  // In the chart x = N sinh r the metric is flat up to O(N^{-2}), so T_N phi
  // carries the gradient norm of Q_N phi, which in turn tends to that of phi.
  const RadialField phi = gauss(Geometry::Euclidean);
  const double ref = std::sqrt(gradient_norm2(phi));
  const RadialGrid target{8.0, 16384};
  double prev_q = 1e9, prev = 1e9, gap = 0.0;
  for (double N : {1.0, 4.0, 16.0, 64.0, 256.0}) {
    const double g = std::sqrt(gradient_norm2(rescaled_profile(phi, N, target)));
    const double q = std::sqrt(gradient_norm2(regularize_q(phi, N)));
    const double gap_q = std::abs(g - q) / q;
    gap = std::abs(g - ref) / ref;
    CHECK(gap_q < prev_q);
    CHECK(gap < prev);
    if (N >= 16.0) CHECK(gap_q < 4.0 / (N * N));
    prev_q = gap_q;
    prev = gap;
  }
  CHECK(gap < 0.02);
  CHECK_THROWS_AS(rescaled_profile(phi, 0.5, target), ScaleTooSmall);
}

TEST_CASE("data families") {
  DataSpec s;
  s.family = "shell";
  s.center = 3.0;
  const RadialField shell = make_data(kGrid, Geometry::Hyperbolic, s);
  double best = 0.0, r_at = 0.0;
  for (int j = 0; j < kGrid.n; ++j)
    if (std::abs(shell.u(j)) > best) best = std::abs(shell.u(j)), r_at = kGrid.r(j);
  CHECK(r_at == doctest::Approx(3.0).epsilon(0.05));
  s.family = "nope";
  CHECK_THROWS_AS(make_data(kGrid, Geometry::Hyperbolic, s), ConfigParse);
}

TEST_CASE("snapshot round trip is exact") {
  const RadialField f = RadialField::from_function(
      kGrid, Geometry::Hyperbolic, [](double r) { return cplx{std::exp(-r), std::sin(r) / (1 + r * r)}; });
  const auto path = tmp("snap.bin");
  io::write_snapshot(f, path);
  const RadialField g = io::read_snapshot(path);
  CHECK(g.grid() == f.grid());
  CHECK(g.geometry() == f.geometry());
  CHECK(std::memcmp(g.h().data(), f.h().data(), f.size() * sizeof(cplx)) == 0);

  std::ofstream(path, std::ios::binary) << "garbage!";
  CHECK_THROWS_AS(io::read_snapshot(path), IoError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(io::read_snapshot(path), IoError);
}

TEST_CASE("CSV round trip") {
  const RadialField f = gauss(Geometry::Euclidean, 2.0);
  const auto path = tmp("field.csv");
  io::write_csv(f, path);
  const RadialField g = io::read_csv(path);
  CHECK(g.grid() == f.grid());
  CHECK(g.geometry() == Geometry::Euclidean);
  for (int j = 0; j < kGrid.n; j += 97) CHECK(g.u(j).real() == doctest::Approx(f.u(j).real()).epsilon(1e-14));
  std::filesystem::remove(path);
}
