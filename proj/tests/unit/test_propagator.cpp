#include <doctest.h>

#include <cmath>

#include "hnls/errors.hpp"
#include "hnls/field.hpp"
#include "hnls/propagator.hpp"
#include "hnls/radial_transform.hpp"

using namespace hnls;

namespace {

const RadialGrid kGrid{30.0, 4096};

RadialField bump(double amp = 1.0, Geometry g = Geometry::Hyperbolic) {
  return RadialField::from_function(kGrid, g, [amp](double r) { return cplx{amp * std::exp(-r * r), 0.0}; });
}

SolverConfig config(double dt, double t_end, bool nonlinear = true) {
  SolverConfig c;
  c.dt = dt;
  c.t_end = t_end;
  c.grid = kGrid;
  c.nonlinearity_on = nonlinear;
  c.record_every = 10;
  c.keep_snapshots = true;
  return c;
}

double dist(const RadialField& a, const RadialField& b) { return std::sqrt(mass(a - b)); }

// Heat kernel continued to complex time z: (4 pi z)^{-3/2} e^{-z} (r / sinh r) e^{-r^2 / 4z}.
cplx complex_heat_kernel(cplx z, double r) {
  const double pi = std::acos(-1.0);
  const double shape = r < 1e-12 ? 1.0 : r / std::sinh(r);
  return std::pow(4.0 * pi * z, -1.5) * std::exp(-z) * shape * std::exp(-r * r / (4.0 * z));
}

}  // namespace

TEST_CASE("nonlinear phase solves the pointwise ODE") {
  // i u_t = |u|^4 u with |u| = a constant: u = a e^{-i a^4 t}
  const RadialField f = bump(1.3);
  const double dt = 0.01;
  const RadialField g = nonlinear_phase(f, dt);
  for (int j : {0, 40, 100}) {
    const double a = f.u(j).real();
    const cplx ref = a * std::exp(cplx{0.0, -std::pow(a, 4) * dt});
    CHECK(std::abs(g.u(j) - ref) < 1e-14);
  }
}

TEST_CASE("linear evolution equals the exact flow") {
  const RadialField f = bump();
  const Trajectory tr = evolve(f, config(1e-2, 0.5, false));
  CHECK(dist(tr.snapshots.back(), schrodinger_flow(tr.times.back(), f)) < 1e-12);
}

TEST_CASE("linear flow of the heat kernel stays a heat kernel") {
  // e^{it Delta} k_{z0} = k_{z0 + it}
  const double z0 = 0.5, t = 0.3;
  const RadialField k = RadialField::from_function(kGrid, Geometry::Hyperbolic,
                                                   [&](double r) { return complex_heat_kernel(z0, r); });
  const Trajectory tr = evolve(k, config(1e-2, t, false));
  const RadialField& u = tr.snapshots.back();
  for (int j : {5, 50, 200, 400}) {
    const cplx ref = complex_heat_kernel(cplx{z0, t}, kGrid.r(j));
    CHECK(std::abs(u.u(j) - ref) < 1e-9 * std::abs(complex_heat_kernel(z0, 0.0)));
  }
}

TEST_CASE("mass and energy are conserved") {
  const RadialField f = normalize_energy(bump(), 1.0);
  const Trajectory tr = evolve(f, config(1e-3, 0.5));
  const double m0 = tr.diagnostics.front().mass, e0 = tr.diagnostics.front().energy;
  for (const auto& d : tr.diagnostics) {
    CHECK(std::abs(d.mass - m0) / m0 < 1e-12);
    CHECK(std::abs(d.energy - e0) / e0 < 1e-6);
  }
}

TEST_CASE("zero data stays zero") {
  RadialField z(kGrid, Geometry::Hyperbolic);
  const Trajectory tr = evolve(z, config(1e-2, 0.2));
  CHECK(mass(tr.snapshots.back()) == 0.0);
}

TEST_CASE("Strang splitting is second order") {
  const RadialField f = normalize_energy(bump(), 1.0);
  const double T = 0.25;
  const auto final_state = [&](double dt) {
    SolverConfig c = config(dt, T);
    c.keep_snapshots = false;
    RadialField u = f;
    evolve(f, c, [&](double, const RadialField& v) { u = v; });
    return u;
  };
  const RadialField ref = final_state(1e-3 / 8);
  const double e1 = dist(final_state(1e-2), ref);
  const double e2 = dist(final_state(5e-3), ref);
  const double order = std::log2(e1 / e2);
  CHECK(order > 1.9);
  CHECK(order < 2.1);
}

TEST_CASE("time reversal") {
  // conj o S_dt o conj = S_dt^{-1} for the symmetric splitting
  const RadialField f = normalize_energy(
      RadialField::from_function(kGrid, Geometry::Hyperbolic, [](double r) { return cplx{std::exp(-r * r), 0.2 * r * std::exp(-r * r)}; }),
      1.0);
  const StrangStepper st(kGrid, Geometry::Hyperbolic, 2e-3);
  RadialField u = f;
  for (int i = 0; i < 100; ++i) st.step(u);
  u = u.conj();
  for (int i = 0; i < 100; ++i) st.step(u);
  CHECK(dist(u.conj(), f) < 1e-10);
}

TEST_CASE("Euclidean evolution uses the Euclidean flow") {
  const RadialField f = bump(1.0, Geometry::Euclidean);
  SolverConfig c = config(1e-2, 0.5, false);
  c.geometry = Geometry::Euclidean;
  const Trajectory tr = euclid_evolve(f, c);
  const cplx a{1.0, 4 * tr.times.back()};
  const double r = kGrid.r(100);
  CHECK(std::abs(tr.snapshots.back().u(100) - std::pow(a, -1.5) * std::exp(-r * r / a)) < 1e-10);
  CHECK_THROWS_AS(euclid_evolve(bump(), c), GridMismatch);
}

TEST_CASE("mass reaching the boundary aborts the run") {
  const RadialGrid small{6.0, 512};
  const RadialField f = RadialField::from_function(small, Geometry::Hyperbolic,
                                                   [](double r) { return cplx{std::exp(-(r - 3) * (r - 3) * 4), 0.0}; });
  SolverConfig c = config(1e-2, 2.0, false);
  c.grid = small;
  CHECK_THROWS_AS(evolve(f, c), BoundaryMassExceeded);
}

TEST_CASE("solver configuration is validated") {
  SolverConfig c = config(0.0, 1.0);
  CHECK_THROWS_AS(c.validate(), ConfigParse);
  c = config(1e-3, -1.0);
  CHECK_THROWS_AS(c.validate(), ConfigParse);
  c = config(1e-3, 1.0);
  c.record_every = 0;
  CHECK_THROWS_AS(c.validate(), ConfigParse);
}
