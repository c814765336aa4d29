#include <doctest.h>

#include <cmath>
#include <limits>

#include "hnls/errors.hpp"
#include "hnls/field.hpp"
#include "hnls/morawetz.hpp"
#include "hnls/propagator.hpp"
#include "hnls/radial_transform.hpp"
#include "oracles.hpp"

using namespace hnls;

TEST_CASE("weight derivatives against finite differences of a(r)") {
  for (double N : {1.0, 2.0, 8.0}) {
    const MorawetzWeight w(N);
    const auto a = [&](double r) { return w.a(r); };
    const auto lap = [&](double r) { return w.laplacian(r); };
    for (double r : {0.1, 0.5, 1.0, 3.0, 7.0}) {
      CHECK(w.da_dr(r) == doctest::Approx(oracle::d1(a, r)).epsilon(1e-8));
      CHECK(w.d2a_dr2(r) == doctest::Approx(oracle::d2(a, r, 1e-3)).epsilon(1e-5).scale(1e-3));
      CHECK(w.laplacian(r) == doctest::Approx(oracle::hyperbolic_laplacian(a, r, 3e-4)).epsilon(1e-6));
      CHECK(w.bilaplacian(r) == doctest::Approx(oracle::hyperbolic_laplacian(lap, r, 1e-3)).epsilon(1e-5).scale(1e-3));
      CHECK(w.grad_norm2(r) <= 1.0);
      CHECK(w.grad_norm2(r) == doctest::Approx(w.da_dr(r) * w.da_dr(r)));
      CHECK(w.hessian_lower_bound(r) >= 0.0);
      CHECK(w.hessian_lower_bound(r) == doctest::Approx(w.d2a_dr2(r)));
    }
    CHECK(w.a_tilde_prime(std::cosh(1.0)) * std::sinh(1.0) == doctest::Approx(w.da_dr(1.0)));
  }
}

TEST_CASE("unregularized weight is the distance") {
  const MorawetzWeight w(std::numeric_limits<double>::infinity());
  for (double r : {0.2, 1.0, 5.0}) {
    CHECK(w.a(r) == doctest::Approx(r));
    CHECK(w.da_dr(r) == doctest::Approx(1.0));
    CHECK(w.laplacian(r) == doctest::Approx(2.0 / std::tanh(r)));
  }
  CHECK_THROWS_AS(MorawetzWeight(0.5), ScaleTooSmall);
}

TEST_CASE("action vanishes for real data and matches quadrature for a chirp") {
  const RadialGrid grid{30.0, 4096};
  const MorawetzWeight w(2.0);
  const RadialField real = RadialField::from_function(grid, Geometry::Hyperbolic, [](double r) { return cplx{std::exp(-r * r), 0.0}; });
  CHECK(std::abs(morawetz_action(real, w)) < 1e-14);
  // u = g e^{i c r^2}: Im conj(u) u' = 2 c r g^2
  const double c = 0.3;
  const RadialField chirp = RadialField::from_function(
      grid, Geometry::Hyperbolic, [c](double r) { return std::exp(-r * r) * std::exp(cplx{0.0, c * r * r}); });
  const double ref = oracle::hyperbolic_integral(
      [&](double r) { return 2.0 * w.da_dr(r) * 2 * c * r * std::exp(-2 * r * r); }, 12.0);
  CHECK(morawetz_action(chirp, w) == doctest::Approx(ref).epsilon(1e-7));
}

TEST_CASE("identity: dM/dt equals the right-hand side") {
  const RadialGrid grid{40.0, 8192};
  const MorawetzWeight w(1.0);
  const RadialField f = RadialField::from_function(
      grid, Geometry::Hyperbolic, [](double r) { return 1.2 * std::exp(-r * r) * std::exp(cplx{0.0, 0.2 * r * r}); });

  SUBCASE("linear") {
    const double d = 1e-4;
    const double lhs = (morawetz_action(schrodinger_flow(d, f), w) - morawetz_action(schrodinger_flow(-d, f), w)) / (2 * d);
    CHECK(lhs == doctest::Approx(morawetz_rhs(f, w, false).total()).epsilon(1e-6));
  }
  SUBCASE("quintic") {
    const double d = 1e-4;
    RadialField fwd = f, bwd = f.conj();
    const StrangStepper st(grid, Geometry::Hyperbolic, d / 8);
    for (int i = 0; i < 8; ++i) st.step(fwd), st.step(bwd);
    const double lhs = (morawetz_action(fwd, w) - morawetz_action(bwd.conj(), w)) / (2 * d);
    const MorawetzRhs rhs = morawetz_rhs(f, w, true);
    CHECK(rhs.potential > 0.0);
    CHECK(lhs == doctest::Approx(rhs.total()).epsilon(1e-4));
  }
}
