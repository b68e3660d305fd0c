#include <doctest.h>

#include <cmath>

#include "nsgeo/bismut.hpp"
#include "nsgeo/init.hpp"
#include "test_helpers.hpp"

using namespace nsgeo;
using namespace nsgeo::test;

TEST_CASE("bismut estimator: constant form gives zero") {
  auto phi = [](const Vec3&) { return Vec3(0.7, -0.2, 1.1); };
  McConfig cfg;
  cfg.paths = 20000;
  cfg.dt = 1e-3;
  cfg.nu = 1.0;
  cfg.seed = 3;
  const auto est = bismut_square_estimator(phi, Vec3(1, 0, 0), 0.5, Vec3(3.0, 3.0, 3.0), cfg);
  CHECK(std::abs(est.value) <= 3.0 * est.stderr_v);
}

TEST_CASE("bismut estimator: quadratic form has a closed-form value") {
  // phi = ((x1 - pi)^2 / 2) e2 around the centre of the box: the second
  // derivative pulls out exactly -v2, independent of t (wrap tails are
  // negligible at t = 0.2)
  const double pi = 3.14159265358979323846;
  auto phi = [pi](const Vec3& x) {
    const double d = x[0] - pi;
    return Vec3(0.0, 0.5 * d * d, 0.0);
  };
  McConfig cfg;
  cfg.paths = 40000;
  cfg.dt = 1e-3;
  cfg.nu = 1.0;
  cfg.seed = 5;
  const double t = 0.2;
  const Vec3 x0(pi, pi, pi);
  SUBCASE("aligned direction") {
    const auto est = bismut_square_estimator(phi, Vec3(0, 1, 0), t, x0, cfg);
    CHECK(std::abs(est.value - (-1.0)) <= 3.0 * est.stderr_v + 1e-4);
  }
  SUBCASE("orthogonal direction vanishes") {
    const auto est = bismut_square_estimator(phi, Vec3(0, 0, 1), t, x0, cfg);
    CHECK(std::abs(est.value) <= 3.0 * est.stderr_v + 1e-4);
  }
}

TEST_CASE("bismut estimator: single-mode spectral oracle") {
  // phi_j = c_j cos(k.x + theta): box T_t phi = |k|^2 exp(-t |k|^2 / 2) phi
  const Vec3 c(0.9, -0.4, 0.3);
  const Vec3 kvec(1.0, 1.0, 0.0);
  const double theta = 0.6;
  auto phi = [&](const Vec3& x) -> Vec3 { return std::cos(kvec.dot(x) + theta) * c; };
  McConfig cfg;
  cfg.paths = 10000;
  cfg.dt = 1e-3;
  cfg.nu = 1.0;
  cfg.seed = 7;
  const double t = 0.5;
  const Vec3 x0(0.3, 1.4, 2.0);
  const Vec3 v(0.2, -1.0, 0.5);
  const auto est = bismut_square_estimator(phi, v, t, x0, cfg);
  const double k2 = kvec.squaredNorm();
  const double oracle = k2 * std::exp(-0.5 * t * k2) * std::cos(kvec.dot(x0) + theta) * c.dot(v);
  CHECK(std::abs(est.value - oracle) <= 3.0 * est.stderr_v);
}

TEST_CASE("bismut estimator: projection-integral variance identity") {
  auto phi = [](const Vec3& x) { return Vec3(std::cos(x[1]), 0.0, 0.0); };
  McConfig cfg;
  cfg.paths = 100000;
  cfg.dt = 1e-3;
  cfg.nu = 1.0;
  cfg.seed = 11;
  const double t = 0.5;
  const Vec3 v(0.8, 0.6, 0.0);  // |v| = 1
  const auto est = bismut_square_estimator(phi, v, t, Vec3(1.0, 1.0, 1.0), cfg);
  const double expect = 0.5 * t * v.squaredNorm();
  CHECK(std::abs(est.half_time_proj_var - expect) <= 0.05 * expect);
}

TEST_CASE("laplacian-of-heat-semigroup norm bound") {
  const Grid g(16);
  SUBCASE("flat thresholds at three horizons") {
    const auto phi = random_divfree_field(g, 13, 4);
    for (double t : {0.1, 0.5, 1.0}) {
      const auto rep = verify_norm_bound(phi, t);
      CHECK(rep.ok);
      CHECK(rep.lhs <= rep.rhs);
      CHECK(rep.rhs == doctest::Approx((2.0 / t) * std::sqrt(5.0) * std::sqrt(l2_norm_sq(phi))));
    }
  }
  SUBCASE("zero form") {
    const SpectralVectorField z(g);
    const auto rep = verify_norm_bound(z, 0.5);
    CHECK(rep.lhs == 0.0);
    CHECK(rep.ok);
  }
  SUBCASE("single unit-wavenumber mode") {
    const auto phi = single_mode(g, 1, 0, 0, 0.0, 1.0, 0.0);
    for (double t : {0.1, 0.5, 1.0}) {
      const auto rep = verify_norm_bound(phi, t);
      CHECK(rep.lhs == doctest::Approx(std::exp(-0.5 * t) * std::sqrt(l2_norm_sq(phi))));
      CHECK(rep.ok);
    }
  }
  SUBCASE("curvature constants enter the threshold") {
    const auto phi = single_mode(g, 1, 0, 0, 0.0, 1.0, 0.0);
    const auto rep = verify_norm_bound(phi, 0.5, 0.4, 0.2);
    const double expect =
        (2.0 / 0.5) * std::exp(1.5 * 0.4 * 0.5) * std::sqrt(4.0 * std::exp(1.5 * 0.2 * 0.5) + 1.0) *
        std::sqrt(l2_norm_sq(phi));
    CHECK(rep.rhs == doctest::Approx(expect));
  }
}
