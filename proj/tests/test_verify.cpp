#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helmfs/verify.hpp"
#include "oracles.hpp"

using namespace helmfs;

namespace {
const SeriesOptions kOpts{1e-12, 400, 3};
const StencilConfig kSt{1e-2, 4, 1};
const HelmholtzParams kHp{0.27, 0.31, 0.6, 3};
} // namespace

TEST_CASE("operator residual on closed-form solutions") {
  // constant field, lambda = 0: every term vanishes
  const HelmholtzParams hp0{0.27, 0.31, 0.0, 3};
  const ResidualReport r0 = helmholtz_residual(
      [](const HalfSpacePoint&) { return 3.7; }, HalfSpacePoint{{1.0, 1.2, 0.8}},
      hp0, kSt, 1e-10);
  CHECK(r0.pass);

  // u = exp(lambda * x3) depends on no singular axis: H u = 0 exactly
  const ResidualReport r1 = helmholtz_residual(
      [](const HalfSpacePoint& p) { return std::exp(0.6 * p.coords[2]); },
      HalfSpacePoint{{1.0, 1.2, 0.8}}, kHp, kSt, 1e-8);
  CHECK(r1.pass);
  CHECK(r1.relative <= 1e-8);
}

TEST_CASE("operator residual rejects on-axis points") {
  CHECK_THROWS_AS(
      helmholtz_residual([](const HalfSpacePoint&) { return 1.0; },
                         HalfSpacePoint{{0.0, 1.0, 1.0}}, kHp, kSt, 1e-8),
      StepTooLarge);
  CHECK_THROWS_AS(
      helmholtz_residual([](const HalfSpacePoint&) { return 1.0; },
                         HalfSpacePoint{{1.0, 1.0}}, kHp, kSt, 1e-8),
      DimensionMismatch);
  StencilConfig bad = kSt;
  bad.order = 3;
  CHECK_THROWS_AS(
      helmholtz_residual([](const HalfSpacePoint&) { return 1.0; },
                         HalfSpacePoint{{1.0, 1.0, 1.0}}, kHp, bad, 1e-8),
      std::invalid_argument);
}

TEST_CASE("hypergeometric system residuals via exact series derivatives") {
  const A2Params p{0.9, 0.3, 0.4, 0.6, 0.8};

  // exact cancellation of the third equation at the origin
  const auto at0 = system_residual(1, p, {0.0, 0.0, 0.0}, kOpts, 1e-10);
  CHECK(at0[2].pass);

  const A2Point pt{-0.2, -0.3, 0.4};
  for (int idx = 1; idx <= 4; ++idx) {
    const auto reps = system_residual(idx, p, pt, kOpts, 1e-8);
    for (const auto& r : reps) {
      INFO("omega ", idx, " ", r.id);
      CHECK(r.pass);
      CHECK(r.relative <= 1e-8);
    }
  }
}

TEST_CASE("printed coefficient formulas") {
  const HalfSpacePoint x0{{1.0, 1.0, 1.0}};
  const HalfSpacePoint x{{1.2, 0.9, 1.1}};

  const ReductionCoefficients co = reduction_coefficients(x, x0, kHp);
  const Geometry g = geometry(x, x0, kHp);
  CHECK(co.a3 ==
        doctest::Approx(-kHp.lambda * kHp.lambda * g.P * g.zeta));

  // lambda = 0 kills every zeta-carrying coefficient
  const HelmholtzParams hp0{0.27, 0.31, 0.0, 3};
  const ReductionCoefficients c0 = reduction_coefficients(x, x0, hp0);
  CHECK(c0.a3 == 0.0);
  CHECK(c0.b2 == 0.0);
  CHECK(c0.b3 == 0.0);
  CHECK(c0.c3 == 0.0);
}

TEST_CASE("printed vs definitional coefficients") {
  const HalfSpacePoint x0{{1.0, 1.0, 1.0}};
  const HalfSpacePoint x{{1.2, 0.9, 1.1}};
  const auto reports = coefficient_consistency(x, x0, kHp, kSt, 1e-6);
  REQUIRE(reports.size() == 10);
  for (const auto& r : reports) {
    INFO(r.id, " relative ", r.relative, " printed-minus-definitional ",
         r.residual);
    if (r.id == "B1") {
      // measured, recorded, not corrected (see module notes)
      WARN(r.pass);
    } else if (r.id == "C3") {
      // The printed closed form disagrees with its own definitional sum by
      // exactly lambda^2 P (p-2); record the measured offset as data.
      const Geometry g = geometry(x, x0, kHp);
      const double offset =
          -kHp.lambda * kHp.lambda * g.P * (static_cast<double>(kHp.p) - 2.0);
      CHECK(r.residual == doctest::Approx(offset).epsilon(1e-6));
    } else {
      CHECK(r.pass);
    }
  }
}

TEST_CASE("assembled substituted equation annihilates every omega") {
  const HalfSpacePoint x0{{1.0, 1.0, 1.0}};
  const HalfSpacePoint x{{1.2, 0.9, 1.1}};
  const ReductionCoefficients co =
      definitional_coefficients(x, x0, kHp, kSt);
  for (int idx = 1; idx <= 4; ++idx) {
    const ResidualReport r =
        substituted_equation_residual(idx, co, x, x0, kHp, kOpts, 1e-6);
    INFO("omega ", idx, " relative ", r.relative);
    CHECK(r.pass);
  }
}

TEST_CASE("singularity exponent fit") {
  const HalfSpacePoint x0{{1.0, 1.1, 0.9}};
  const std::vector<double> dir{0.4, -0.3, 0.8};
  // Small radii: at r ~ 1e-1 the regular part of the kernel still biases
  // the log-log slope for p = 3 at this source scale.
  const std::vector<double> radii{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  const ExponentFit fit =
      singularity_exponent({1, 1.0}, x0, dir, radii, kHp, kOpts);
  CHECK(fit.points_used == 5);
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(0.05));

  CHECK_THROWS_AS(singularity_exponent({1, 1.0}, x0, dir, {1e-2, 1e-3},
                                       kHp, kOpts),
                  FitDegenerate);
  CHECK_THROWS_AS(singularity_exponent({1, 1.0}, x0, {0, 0, 0}, radii, kHp,
                                       kOpts),
                  std::invalid_argument);
}

TEST_CASE("boundary limits") {
  const HalfSpacePoint x0{{1.0, 1.1, 0.9}};
  const HalfSpacePoint tmpl{{0.8, 1.3, 1.2}};

  const BoundaryLimit v2 = boundary_limit({2, 1.0}, 1, BoundaryMode::value,
                                          tmpl, x0, kHp, kOpts, 1e-3);
  CHECK(v2.pass);

  const BoundaryLimit d1 =
      boundary_limit({1, 1.0}, 1, BoundaryMode::normal_derivative, tmpl, x0,
                     kHp, kOpts, 1e-3);
  CHECK(d1.pass);

  CHECK_THROWS_AS(boundary_limit({1, 1.0}, 3, BoundaryMode::value, tmpl, x0,
                                 kHp, kOpts, 1e-3),
                  std::invalid_argument);
}
