#include <doctest.h>

#include <cmath>

#include "hnls/errors.hpp"
#include "hnls/field.hpp"
#include "hnls/profiles.hpp"

using namespace hnls;

TEST_CASE("frame discrepancy") {
  const Frame a = Frame::euclidean({2, 4, 8, 16}, {0, 0, 0, 0});
  const auto d0 = frame_discrepancy(a, a);
  for (double d : d0) CHECK(d == 0.0);

  const Frame b = Frame::euclidean({4, 8, 16, 32}, {0, 0, 0, 0});
  for (double d : frame_discrepancy(a, b)) CHECK(d == doctest::Approx(std::log(2.0)));
  CHECK(frames_equivalent(a, b));

  const Frame c = Frame::euclidean({4, 16, 64, 256}, {0, 0, 0, 0});
  CHECK_FALSE(frames_equivalent(a, c, 1.0));

  // time offsets are measured in units of N^{-2}
  const Frame t = Frame::euclidean({2, 4, 8, 16}, {0.25, 0.25 / 4, 0.25 / 16, 0.25 / 64});
  for (double d : frame_discrepancy(a, t)) CHECK(d == doctest::Approx(1.0));

  CHECK_THROWS_AS(frame_discrepancy(a, Frame::hyperbolic({0, 1})), LengthMismatch);
  CHECK_THROWS_AS(Frame::euclidean({1, 2}, {0}), LengthMismatch);
}

TEST_CASE("a vanishing sequence has no profile") {
  const RadialGrid grid{20.0, 1024};
  std::vector<RadialField> seq(4, RadialField(grid, Geometry::Hyperbolic));
  std::vector<RadialField> rem;
  ExtractionOptions opts;
  opts.grid = ConcentrationGrid::standard(16.0, 2, 0.5, 0.25);
  CHECK_THROWS_AS(extract_profile(seq, 0.05, rem, opts), NoConcentration);
}

TEST_CASE("cross terms vanish against zero") {
  const RadialGrid grid{20.0, 1024};
  const RadialField a = RadialField::from_function(grid, Geometry::Hyperbolic, [](double r) { return cplx{std::exp(-r * r), 0.0}; });
  const CrossTerms ct = cross_terms(a, RadialField(grid, Geometry::Hyperbolic));
  CHECK(ct.h1_inner == 0.0);
  CHECK(ct.l3_product == 0.0);
  CHECK(cross_terms(a, a).h1_inner == doctest::Approx(gradient_norm2(a)));
}

TEST_CASE("a translated hyperbolic profile is recovered") {
  const RadialGrid grid{20.0, 2048};
  const RadialField psi = RadialField::from_function(grid, Geometry::Hyperbolic, [](double r) { return cplx{0.5 * std::exp(-r * r), 0.0}; });
  const std::vector<double> times{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  const auto seq = hyperbolic_profile_sequence(psi, times);
  REQUIRE(seq.size() == times.size());
  CHECK(mass(seq[3] - time_translate(psi, 0.3)) < 1e-24);

  ExtractionOptions opts;
  opts.grid = ConcentrationGrid::standard(64.0, 2, 1.0, 0.05);
  std::vector<RadialField> rem;
  const ExtractedProfile p = extract_profile(seq, 0.01, rem, opts);
  CHECK(p.frame.kind == FrameKind::Hyperbolic);
  CHECK(frames_equivalent(p.frame, Frame::hyperbolic(times)));
  CHECK(p.free_energy == doctest::Approx(gradient_norm2(psi)).epsilon(0.05));
  CHECK(gradient_norm2(rem.back()) < 0.05 * gradient_norm2(psi));
}
