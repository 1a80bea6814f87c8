#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helmfs/appell.hpp"
#include "helmfs/fundsol.hpp"
#include "oracles.hpp"

using namespace helmfs;

namespace {
const SeriesOptions kOpts{1e-12, 400, 3};
}

TEST_CASE("geometry worked example") {
  const HelmholtzParams hp{0.25, 0.25, 2.0, 3};
  const HalfSpacePoint x0{{1.0, 1.0, 1.0}};
  const HalfSpacePoint x{{1.0, 1.0, 2.0}};
  const Geometry g = geometry(x, x0, hp);
  CHECK(g.r2 == 1.0);
  CHECK(g.r1_2 == 5.0);
  CHECK(g.r2_2 == 5.0);
  CHECK(g.xi == -4.0);
  CHECK(g.eta == -4.0);
  CHECK(g.zeta == -1.0);
  CHECK(g.P == doctest::Approx(std::pow(1.0, 1 - 0.25 - 0.25 - 1.5)));

  // algebraic identities of the definitions
  CHECK(g.r1_2 == doctest::Approx(g.r2 + 4.0 * x.x1() * x0.x1()));
  CHECK(g.r2_2 == doctest::Approx(g.r2 + 4.0 * x.x2() * x0.x2()));
}

TEST_CASE("geometry error paths") {
  const HelmholtzParams hp{0.25, 0.25, 1.0, 3};
  const HalfSpacePoint a{{1.0, 1.0, 1.0}};
  CHECK_THROWS_AS(geometry(a, a, hp), CoincidentPoints);
  const HalfSpacePoint b{{1.0, 1.0}};
  CHECK_THROWS_AS(geometry(a, b, hp), DimensionMismatch);
  CHECK(geometry(a, HalfSpacePoint{{1.0, 1.0, 2.0}}, hp).zeta == -0.25);
}

TEST_CASE("lambda = 0 reduces the kernel to an Appell composition") {
  const HelmholtzParams hp{0.27, 0.31, 0.0, 3};
  const HalfSpacePoint x0{{0.2, 0.3, 0.4}};
  const HalfSpacePoint x{{1.4, 1.6, 3.0}};
  const Geometry g = geometry(x, x0, hp);
  REQUIRE(std::fabs(g.xi) + std::fabs(g.eta) < 1.0);
  CHECK(g.zeta == 0.0);

  const A2Params p = kernel_a2_params(1, hp);
  const double ref =
      std::pow(g.r2, 1.0 - hp.alpha - hp.beta - 1.5) *
      appell_f2_direct(p.a, p.b1, p.b2, p.c1, p.c2, g.xi, g.eta, kOpts).value;
  CHECK(q({1, 1.0}, x, x0, hp, kOpts).value ==
        doctest::Approx(ref).epsilon(1e-11));
}

TEST_CASE("far separation leaves the pure power prefactor") {
  const HelmholtzParams hp{0.27, 0.31, 0.0, 3};
  const HalfSpacePoint x0{{1e-7, 1e-7, 0.0}};
  const HalfSpacePoint x{{1.0, 1.0, 2.0}};
  const Geometry g = geometry(x, x0, hp);
  const double ref = std::pow(g.r2, 1.0 - hp.alpha - hp.beta - 1.5);
  CHECK(q({1, 1.0}, x, x0, hp, kOpts).value ==
        doctest::Approx(ref).epsilon(1e-5));
}

TEST_CASE("source/field symmetry") {
  const HelmholtzParams hp{0.27, 0.31, 0.8, 4};
  const HalfSpacePoint x0{{0.9, 1.1, 1.0, 0.7}};
  const HalfSpacePoint x{{1.6, 0.5, 0.2, 1.9}};
  for (int k = 1; k <= 4; ++k)
    CHECK(q({k, 1.0}, x, x0, hp, kOpts).value ==
          doctest::Approx(q({k, 1.0}, x0, x, hp, kOpts).value)
              .epsilon(1e-10));
}

TEST_CASE("axis exchange maps q2 <-> q3") {
  const HelmholtzParams hp{0.27, 0.31, 0.8, 4};
  const HelmholtzParams hps{0.31, 0.27, 0.8, 4};
  const HalfSpacePoint x0{{0.9, 1.1, 1.0, 0.7}};
  const HalfSpacePoint x{{1.6, 0.5, 0.2, 1.9}};
  const HalfSpacePoint x0s{{1.1, 0.9, 1.0, 0.7}};
  const HalfSpacePoint xs{{0.5, 1.6, 0.2, 1.9}};
  CHECK(q({1, 1.0}, x, x0, hp, kOpts).value ==
        doctest::Approx(q({1, 1.0}, xs, x0s, hps, kOpts).value)
            .epsilon(1e-10));
  CHECK(q({2, 1.0}, x, x0, hp, kOpts).value ==
        doctest::Approx(q({3, 1.0}, xs, x0s, hps, kOpts).value)
            .epsilon(1e-10));
  CHECK(q({4, 1.0}, x, x0, hp, kOpts).value ==
        doctest::Approx(q({4, 1.0}, xs, x0s, hps, kOpts).value)
            .epsilon(1e-10));
}

TEST_CASE("prefactor vanishing on the singular planes") {
  const HelmholtzParams hp{0.27, 0.31, 0.5, 3};
  const HalfSpacePoint x0{{1.0, 1.0, 1.0}};
  const double v = q({2, 1.0}, HalfSpacePoint{{1e-7, 0.9, 1.5}}, x0, hp,
                     kOpts)
                       .value;
  CHECK(std::fabs(v) < 1e-2); // ~ (1e-7)^{1-2*0.27}
  CHECK(q({2, 1.0}, HalfSpacePoint{{0.0, 0.9, 1.5}}, x0, hp, kOpts).value ==
        0.0);
  CHECK(q({4, 1.0}, HalfSpacePoint{{0.8, 0.0, 1.5}}, x0, hp, kOpts).value ==
        0.0);
}

TEST_CASE("kernel normalization constant scales linearly") {
  const HelmholtzParams hp{0.27, 0.31, 0.5, 3};
  const HalfSpacePoint x0{{1.0, 1.0, 1.0}};
  const HalfSpacePoint x{{1.5, 0.7, 1.8}};
  const double v1 = q({1, 1.0}, x, x0, hp, kOpts).value;
  const double v2 = q({1, -2.5}, x, x0, hp, kOpts).value;
  CHECK(v2 == doctest::Approx(-2.5 * v1).epsilon(1e-14));
  CHECK_THROWS_AS(q({0, 1.0}, x, x0, hp, kOpts), std::invalid_argument);
}

TEST_CASE("constructive formula wrappers") {
  const HelmholtzParams hp{0.27, 0.31, 0.5, 3};
  const HalfSpacePoint x{{1.3, 0.8, 1.1}};

  const TransformedField t1 =
      apply_constructive(1, [](const HalfSpacePoint&) { return 1.0; }, hp);
  CHECK(t1.params.alpha == doctest::Approx(1.0 - hp.alpha));
  CHECK(t1.params.beta == hp.beta);
  CHECK(t1.field(x) == doctest::Approx(std::pow(x.x1(), 1.0 - 2.0 * 0.27)));

  // involution: applying the reflected formula undoes the multiplier
  ScalarField u = [](const HalfSpacePoint& p) {
    return std::sin(p.x1()) + p.x2();
  };
  const TransformedField once = apply_constructive(1, u, hp);
  const TransformedField twice =
      apply_constructive(1, once.field, once.params);
  CHECK(twice.params.alpha == doctest::Approx(hp.alpha));
  CHECK(twice.field(x) == doctest::Approx(u(x)).epsilon(1e-14));

  CHECK_THROWS_AS(apply_constructive(3, u, hp), std::invalid_argument);
}

TEST_CASE("formula 1 relates q1 of reflected alpha to q2") {
  const HelmholtzParams hp{0.27, 0.31, 0.5, 3};
  HelmholtzParams refl = hp;
  refl.alpha = 1.0 - hp.alpha;
  const HalfSpacePoint x0{{0.9, 1.1, 1.0}};
  oracles::Rng rng(53);
  const double expected_ratio = std::pow(x0.x1(), 2.0 * hp.alpha - 1.0);
  for (int i = 0; i < 10; ++i) {
    HalfSpacePoint x = x0;
    for (auto& c : x.coords) c += rng.sign() * rng.uniform(0.3, 0.9);
    x.coords[0] = std::max(x.coords[0], 0.4);
    x.coords[1] = std::max(x.coords[1], 0.4);
    const double lhs = std::pow(x.x1(), 1.0 - 2.0 * hp.alpha) *
                       q({1, 1.0}, x, x0, refl, kOpts).value;
    const double rhs = q({2, 1.0}, x, x0, hp, kOpts).value;
    CHECK(lhs / rhs == doctest::Approx(expected_ratio).epsilon(1e-9));
  }
}
