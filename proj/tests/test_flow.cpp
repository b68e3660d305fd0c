#include <doctest.h>

#include <cmath>
#include <limits>

#include "nsgeo/diagnostics.hpp"
#include "nsgeo/flow.hpp"
#include "nsgeo/init.hpp"
#include "test_helpers.hpp"

using namespace nsgeo;
using namespace nsgeo::test;

TEST_CASE("ns_rhs") {
  const Grid g(16);
  const double nu = 0.1;
  SUBCASE("Beltrami field: nonlinear term projects away") {
    const auto u = abc_field(g);
    const auto rhs = ns_rhs(u, nu);
    const auto expect = -nu * u;
    CHECK(max_coeff_diff(rhs, expect) <= 1e-12);
  }
  SUBCASE("zero field") {
    const SpectralVectorField z(g);
    CHECK(max_coeff(ns_rhs(z, nu)) == 0.0);
  }
  SUBCASE("single projected mode: no component along k") {
    const auto u = leray_project(single_mode(g, 1, 2, 0, 0.7, -0.3, 1.1));
    auto r = ns_rhs(u, nu);
    // r + nu |k|^2 u is the projected nonlinear part; must be divergence-free
    for (int j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < r.component(j).size(); ++i) r.at(j, i) += nu * 5.0 * u.at(j, i);
    CHECK(divergence_ratio(r) <= 1e-12);
  }
}

TEST_CASE("vorticity_rhs") {
  const Grid g(16);
  const double nu = 0.07;
  SUBCASE("ABC transport cancels against stretching") {
    const auto u = abc_field(g);
    const auto rhs = vorticity_rhs(u, u, nu);
    CHECK(max_coeff_diff(rhs, -nu * u) <= 1e-12);
  }
  SUBCASE("zero vorticity") {
    const auto u = abc_field(g);
    const SpectralVectorField z(g);
    CHECK(max_coeff(vorticity_rhs(z, u, nu)) <= 1e-15);
  }
  SUBCASE("zero velocity reduces to heat flow") {
    const SpectralVectorField z(g);
    const auto xi = abc_field(g);
    const auto rhs = vorticity_rhs(xi, z, nu);
    CHECK(max_coeff_diff(rhs, -nu * xi) <= 1e-13);  // lap(ABC) = -ABC
  }
  SUBCASE("grid mismatch rejected") {
    const auto xi = abc_field(Grid(8));
    const auto u = abc_field(g);
    CHECK_THROWS_AS((void)vorticity_rhs(xi, u, nu), std::invalid_argument);
  }
}

TEST_CASE("step") {
  const Grid g(16);
  FluidParams p;
  p.nu = 0.1;
  p.dt = 1e-3;
  SUBCASE("one step of Beltrami decay is exact to RK4 tolerance") {
    const auto state = FlowState::from_velocity(abc_field(g));
    const auto next = step(state, p);
    const auto expect = std::exp(-p.nu * p.dt) * state.u;
    CHECK(rel_l2_diff(next.u, expect) <= 1e-9);
    CHECK(rel_l2_diff(next.xi, expect) <= 1e-9);
  }
  SUBCASE("zero stays zero") {
    FlowState z;
    z.u = SpectralVectorField(g);
    z.xi = SpectralVectorField(g);
    const auto next = step(z, p);
    CHECK(max_coeff(next.u) == 0.0);
  }
  SUBCASE("Taylor-Green energy decreases") {
    const auto state = FlowState::from_velocity(taylor_green_field(g));
    const double e0 = 0.5 * l2_norm_sq(state.u);
    const auto next = step(state, p);
    CHECK(0.5 * l2_norm_sq(next.u) < e0);
  }
  SUBCASE("non-finite state aborts") {
    auto state = FlowState::from_velocity(abc_field(g));
    state.u.at(0, 5) = Complex{std::numeric_limits<double>::infinity(), 0.0};
    CHECK_THROWS_AS((void)step(state, p), std::runtime_error);
  }
}

TEST_CASE("run: Beltrami exact solution, short horizon") {
  const Grid g(16);
  FluidParams p;
  p.nu = 0.1;
  p.dt = 1e-3;
  p.t_end = 0.1;
  const auto u0 = abc_field(g);
  FlowState last;
  run(FlowState::from_velocity(u0), p, 25, [&](const RunSample& s) { last = s.state; });
  CHECK(last.time == doctest::Approx(0.1).epsilon(1e-12));
  const auto expect = std::exp(-p.nu * p.t_end) * u0;
  CHECK(rel_l2_diff(last.u, expect) <= 1e-8);
  CHECK(rel_l2_diff(curl(last.u), last.xi) <= 1e-10);
}

TEST_CASE("run: random data invariants") {
  const Grid g(16);
  FluidParams p;
  p.nu = 0.05;
  p.dt = 1e-3;
  p.t_end = 0.2;
  const auto u0 = random_divfree_field(g, 99, 4);
  std::vector<double> energies;
  std::vector<double> grad_sq;
  double worst_consistency = 0.0;
  run(FlowState::from_velocity(u0), p, 10, [&](const RunSample& s) {
    energies.push_back(0.5 * l2_norm_sq(s.state.u));
    grad_sq.push_back(grad_norm_sq(s.state.u));
    const double xin = std::sqrt(l2_norm_sq(s.state.xi));
    worst_consistency = std::max(worst_consistency, std::sqrt(l2_norm_sq(curl(s.state.u) - s.state.xi)) / xin);
  });
  SUBCASE("energy is non-increasing") {
    for (std::size_t i = 1; i < energies.size(); ++i) CHECK(energies[i] <= energies[i - 1] * (1 + 1e-12));
  }
  SUBCASE("a priori bound with trapezoid dissipation") {
    double acc = 0.0;
    const double h = 0.01;  // 10 steps between samples
    for (std::size_t i = 1; i < energies.size(); ++i) {
      acc += 0.5 * h * (grad_sq[i] + grad_sq[i - 1]);
      CHECK(energies[i] + p.nu * acc <= energies[0] * (1 + 1e-4));
    }
  }
  SUBCASE("co-evolved vorticity stays consistent with curl(u)") {
    CHECK(worst_consistency <= 1e-6);
  }
}

TEST_CASE("mollified_rhs") {
  const Grid g(16);
  FluidParams p;
  p.nu = 0.1;
  p.scheme = Scheme::mollified;
  SUBCASE("zero field") {
    p.epsilon = 0.1;
    const SpectralVectorField z(g);
    CHECK(max_coeff(mollified_rhs(z, p)) == 0.0);
  }
  SUBCASE("Beltrami closed form") {
    p.epsilon = 0.3;
    const auto u = abc_field(g);
    const auto rhs = mollified_rhs(u, p);
    const auto expect = (-p.nu * std::exp(-p.epsilon)) * u;
    CHECK(max_coeff_diff(rhs, expect) <= 1e-12);
  }
  SUBCASE("first-order convergence to the unmollified right-hand side") {
    const auto u = random_divfree_field(g, 5, 3);
    const auto base = ns_rhs(u, p.nu);
    double prev = -1.0;
    for (double eps : {1e-1, 1e-2, 1e-3}) {
      p.epsilon = eps;
      const double err = std::sqrt(l2_norm_sq(mollified_rhs(u, p) - base));
      if (prev > 0.0) {
        const double rate = prev / err;
        CHECK(rate > 5.0);  // one decade of epsilon buys about one decade of error
        CHECK(rate < 20.0);
      }
      prev = err;
    }
  }
}

TEST_CASE("mollified scheme run: energy inequality and epsilon convergence") {
  const Grid g(16);
  const auto u0 = random_divfree_field(g, 7, 3);
  FluidParams ref;
  ref.nu = 0.1;
  ref.dt = 2e-3;
  ref.t_end = 0.2;
  FlowState uref;
  run(FlowState::from_velocity(u0), ref, 1000000, [&](const RunSample& s) { uref = s.state; });

  double prev_gap = -1.0;
  for (double eps : {0.1, 0.05, 0.025}) {
    FluidParams p = ref;
    p.scheme = Scheme::mollified;
    p.epsilon = eps;
    std::vector<double> e, gtu;
    FlowState last;
    run(FlowState::from_velocity(u0), p, 10, [&](const RunSample& s) {
      e.push_back(0.5 * l2_norm_sq(s.state.u));
      gtu.push_back(grad_norm_sq(heat_multiplier(s.state.u, 0.5 * eps)));
      last = s.state;
    });
    double acc = 0.0;
    const double h = p.dt * 10;
    for (std::size_t i = 1; i < e.size(); ++i) {
      acc += 0.5 * h * (gtu[i] + gtu[i - 1]);
      CHECK(e[i] + p.nu * acc <= e[0] * (1 + 1e-4));
    }
    const double gap = std::sqrt(l2_norm_sq(last.u - uref.u));
    if (prev_gap >= 0.0) CHECK(gap < prev_gap);
    prev_gap = gap;
  }
}

TEST_CASE("pressure recovery") {
  const Grid g(16);
  const auto u = abc_field(g);
  const auto p = recover_pressure(u);
  // For a Beltrami field grad_u u = grad(|u|^2 / 2), so p = -|u|^2/2 + mean
  const auto up = u.to_physical();
  const auto pp = p.to_physical();
  double mean = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double q = up[0][i] * up[0][i] + up[1][i] * up[1][i] + up[2][i] * up[2][i];
    mean += -0.5 * q - pp[i];
  }
  mean /= static_cast<double>(g.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double q = up[0][i] * up[0][i] + up[1][i] * up[1][i] + up[2][i] * up[2][i];
    worst = std::max(worst, std::abs(-0.5 * q - mean - pp[i]));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("stability ratio reporting") {
  FluidParams p;
  p.nu = 0.1;
  p.dt = 1e-3;
  CHECK(p.stability_ratio(Grid(16)) == doctest::Approx(0.1 * 1e-3 * 64));
}
