#include <doctest.h>

#include <cmath>

#include "hnls/diagnostics.hpp"
#include "hnls/errors.hpp"
#include "hnls/field.hpp"
#include "hnls/radial_transform.hpp"
#include "oracles.hpp"

using namespace hnls;
using oracle::pi;

TEST_CASE("log-log slope") {
  std::vector<double> x, y;
  for (int i = 1; i <= 10; ++i) {
    x.push_back(i * 1.7);
    y.push_back(3.0 * std::pow(i * 1.7, -1.25));
  }
  CHECK(loglog_slope(x, y) == doctest::Approx(-1.25).epsilon(1e-12));
}

TEST_CASE("dispersive norms of a Euclidean gaussian") {
  // |e^{it Delta} e^{-r^2}| = s^{-3/4} exp(-r^2 / s), s = 1 + 16 t^2
  const RadialGrid grid{200.0, 16384};
  const RadialField phi = RadialField::from_function(grid, Geometry::Euclidean, [](double r) { return cplx{std::exp(-r * r), 0.0}; });
  const double p = 1.5, q = p / (p - 1);
  const std::vector<double> times{0.5, 1.0, 2.0, 4.0};
  const DecayFit fit = dispersive_decay_check(phi, times, p);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double s = 1 + 16 * times[i] * times[i];
    const double ref = std::pow(std::pow(s, -0.75 * q) * std::pow(pi * s / q, 1.5), 1.0 / q);
    CHECK(fit.norms[i] == doctest::Approx(ref).epsilon(1e-8));
  }
  CHECK_THROWS_AS(dispersive_decay_check(phi, times, 2.5), ConfigParse);
}

TEST_CASE("refined Sobolev report is consistent") {
  const RadialGrid grid{30.0, 4096};
  const RadialField f = RadialField::from_function(grid, Geometry::Hyperbolic, [](double r) { return cplx{std::exp(-r * r), 0.0}; });
  const RefinedSobolevReport rep = refined_sobolev_check(f, 64.0, 13);
  CHECK(rep.lhs == doctest::Approx(lp_norm(f, 6.0)));
  CHECK(rep.gradient == doctest::Approx(std::sqrt(gradient_norm2(f))));
  CHECK(rep.sup_N >= 1.0);
  CHECK(rep.sup_N <= 64.0);
  CHECK(rep.ratio == doctest::Approx(rep.lhs / (std::cbrt(rep.gradient) * std::pow(rep.sup_value, 2.0 / 3.0))));
  // scaling the data scales every term alike
  const RefinedSobolevReport rep3 = refined_sobolev_check(cplx{3.0, 0.0} * f, 64.0, 13);
  CHECK(rep3.ratio == doctest::Approx(rep.ratio).epsilon(1e-10));
}

TEST_CASE("local smoothing needs K >= N >= 1") {
  const RadialGrid grid{30.0, 4096};
  const RadialField f = RadialField::from_function(grid, Geometry::Hyperbolic, [](double r) { return cplx{std::exp(-r * r), 0.0}; });
  CHECK_THROWS_AS(local_smoothing_check(f, 4.0, 2.0), ConfigParse);
  const LocalSmoothingReport rep = local_smoothing_check(f, 1.0, 4.0);
  CHECK(rep.bound == doctest::Approx(0.5));
  CHECK(rep.ratio == doctest::Approx(rep.value / rep.bound));
}

TEST_CASE("space-time norms of a stationary field") {
  const RadialGrid grid{30.0, 4096};
  const RadialField f = RadialField::from_function(grid, Geometry::Hyperbolic, [](double r) { return cplx{std::exp(-r * r), 0.0}; });
  const std::vector<double> times{0.0, 0.5, 1.0, 2.0};
  const std::vector<RadialField> fields(times.size(), f);
  const StrichartzNorms n = strichartz_accumulators(times, fields);
  CHECK(n.z == doctest::Approx(std::pow(2.0 * lp_integral(f, 10.0), 0.1)));
  CHECK(n.l2_l6 == doctest::Approx(std::sqrt(2.0) * lp_norm(f, 6.0)));
}

TEST_CASE("Morawetz identity and inequality on a simulated trajectory") {
  const RadialGrid grid{40.0, 8192};
  const RadialField f = normalize_energy(
      RadialField::from_function(grid, Geometry::Hyperbolic, [](double r) { return cplx{std::exp(-r * r), 0.0}; }), 1.0);
  SolverConfig c;
  c.grid = grid;
  c.dt = 1e-3;
  c.t_end = 0.2;
  c.record_every = 5;
  const Trajectory tr = evolve(f, c);
  const MorawetzIdentityReport id = morawetz_identity_check(tr, MorawetzWeight(1.0));
  CHECK(id.max_relative_mismatch < 0.03);

  const InequalityReport ineq = morawetz_inequality_check(tr);
  std::vector<double> l6;
  for (const auto& u : tr.snapshots) l6.push_back(lp_integral(u, 6.0));
  double lhs = 0.0;
  for (std::size_t i = 1; i < l6.size(); ++i) lhs += 0.5 * (l6[i] + l6[i - 1]) * (tr.times[i] - tr.times[i - 1]);
  CHECK(ineq.lhs == doctest::Approx(lhs).epsilon(1e-10));
  CHECK(ineq.ratio == doctest::Approx(ineq.lhs / ineq.rhs));
}

TEST_CASE("corpus is deterministic in the seed") {
  const RadialGrid grid{30.0, 1024};
  const auto a = make_corpus(grid, Geometry::Hyperbolic, 6, 11);
  const auto b = make_corpus(grid, Geometry::Hyperbolic, 6, 11);
  const auto c = make_corpus(grid, Geometry::Hyperbolic, 6, 12);
  REQUIRE(a.size() == 6);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(mass(a[i] - b[i]) == 0.0);
    CHECK(a[i].all_finite());
    differs = differs || mass(a[i] - c[i]) > 0.0;
  }
  CHECK(differs);
}
