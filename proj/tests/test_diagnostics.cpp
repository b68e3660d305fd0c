#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nsgeo/connection.hpp"
#include "nsgeo/diagnostics.hpp"
#include "nsgeo/init.hpp"
#include "nsgeo/ricci_hat.hpp"
#include "nsgeo/rng.hpp"
#include "test_helpers.hpp"

using namespace nsgeo;
using namespace nsgeo::test;

namespace {

std::vector<DiagnosticsRecord> run_series(const SpectralVectorField& u0, FluidParams p, int every) {
  std::vector<DiagnosticsRecord> out;
  run(FlowState::from_velocity(u0), p, every, [&](const RunSample& s) {
    out.push_back(sample_diagnostics(s.state, p.nu));
  });
  fill_residuals(out, p.nu);
  return out;
}

}  // namespace

TEST_CASE("helicity") {
  const Grid g(16);
  SUBCASE("ABC with unit amplitudes") {
    const auto u = abc_field(g);
    const double expect = 3.0 * kTwoPi * kTwoPi * kTwoPi;  // integral of |u|^2
    CHECK(std::abs(helicity(u, curl(u)) - expect) <= 1e-10 * expect);
  }
  SUBCASE("Taylor-Green is helicity-free") {
    const auto u = taylor_green_field(g);
    const double scale = l2_norm_sq(curl(u));
    CHECK(std::abs(helicity(u, curl(u))) <= 1e-10 * scale);
  }
  SUBCASE("zero field") {
    const SpectralVectorField z(g);
    CHECK(helicity(z, z) == 0.0);
  }
  SUBCASE("invariant under simultaneous sign flip") {
    const auto u = random_divfree_field(g, 3, 4);
    const auto xi = curl(u);
    CHECK(helicity(u, xi) == helicity(-1.0 * u, -1.0 * xi));
  }
}

TEST_CASE("the two enstrophy integrands agree pointwise (pure algebra)") {
  Philox rng(5, 0);
  for (int s = 0; s < 1000; ++s) {
    const double nu = 0.05 + rng.uniform();
    Eigen::Vector3d u, xi;
    for (int i = 0; i < 3; ++i) {
      u[i] = rng.gaussian();
      xi[i] = rng.gaussian();
    }
    Eigen::Matrix3d S;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) S(i, j) = S(j, i) = rng.gaussian();
    const double xu = xi.dot(u);
    const double sq = xi.dot(S * xi);
    const double ric_quad = (0.5 / (nu * nu)) * xu * xu - sq / nu;
    const double lhs = -nu * ric_quad + 0.5 / nu * xu * xu;
    CHECK(std::abs(lhs - sq) <= 1e-12 * std::max(1.0, std::abs(sq)));
  }
}

TEST_CASE("the two helicity source integrands agree pointwise (pure algebra)") {
  // -nu xi . RicHat(u) + (1/2nu)(xi.u)|u|^2 must equal xi . S(u) u for any
  // symmetric S and vectors
  Philox rng(7, 0);
  for (int s = 0; s < 1000; ++s) {
    const double nu = 0.05 + rng.uniform();
    Eigen::Vector3d u, xi;
    for (int i = 0; i < 3; ++i) {
      u[i] = rng.gaussian();
      xi[i] = rng.gaussian();
    }
    Eigen::Matrix3d S;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) S(i, j) = S(j, i) = rng.gaussian();
    const double uu = u.squaredNorm();
    const double xu = xi.dot(u);
    const double ric_u_xi = (0.5 / (nu * nu)) * uu * xu - xi.dot(S * u) / nu;
    const double lhs = -nu * ric_u_xi + 0.5 / nu * xu * uu;
    const double rhs = xi.dot(S * u);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("pure heat decay of the vorticity") {
  const Grid g(16);
  FluidParams p;
  p.nu = 0.2;
  p.dt = 1e-3;
  p.t_end = 0.1;
  FlowState st;
  st.u = SpectralVectorField(g);        // zero velocity stays zero
  st.xi = abc_field(g);                 // pure heat flow for xi
  std::vector<DiagnosticsRecord> recs;
  run(st, p, 4, [&](const RunSample& s) { recs.push_back(sample_diagnostics(s.state, p.nu)); });
  fill_residuals(recs, p.nu);
  for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
    // d/dt (1/2)||xi||^2 = -nu ||grad xi||^2 for the discrete series
    const double dz = (recs[i + 1].enstrophy - recs[i - 1].enstrophy) / (recs[i + 1].time - recs[i - 1].time);
    CHECK(std::abs(dz + p.nu * recs[i].grad_xi_sq) <= 1e-6 * p.nu * recs[i].grad_xi_sq);
    CHECK(std::abs(recs[i].helicity) <= 1e-12);
  }
}

TEST_CASE("balance-law residuals on the Beltrami run") {
  const Grid g(16);
  FluidParams p;
  p.nu = 0.1;
  p.dt = 1e-3;
  p.t_end = 0.2;
  const auto series = run_series(abc_field(g), p, 5);
  const auto sum = summarize_residuals(series);
  CHECK(sum.max_energy <= 1e-4);
  CHECK(sum.max_enstrophy <= 1e-3);
  CHECK(sum.max_enstrophy_ricci <= 1e-3);
  CHECK(sum.max_helicity <= 1e-3);
  CHECK(sum.max_forms_gap <= 1e-10);
  CHECK(sum.max_vorticity_consistency <= 1e-6);
  // exact helicity decay H(t) = H(0) exp(-2 nu t)
  for (const auto& r : series) {
    const double expect = series.front().helicity * std::exp(-2.0 * p.nu * r.time);
    CHECK(std::abs(r.helicity - expect) <= 1e-6 * expect);
  }
}

TEST_CASE("residuals converge at second order in the sampling step") {
  const Grid g(16);
  double prev = -1.0;
  for (double dt : {2e-3, 1e-3, 5e-4}) {
    FluidParams p;
    p.nu = 0.1;
    p.dt = dt;
    p.t_end = 0.06;
    const auto series = run_series(abc_field(g), p, 1);
    const double r = summarize_residuals(series).max_energy;
    if (prev > 0.0) {
      const double rate = prev / r;
      CHECK(rate > 3.0);
      CHECK(rate < 5.0);
    }
    prev = r;
  }
}

TEST_CASE("mirror-symmetric data keeps zero helicity under evolution") {
  const Grid g(16);
  FluidParams p;
  p.nu = 0.1;
  p.dt = 1e-3;
  p.t_end = 0.1;
  double worst = 0.0, scale = 0.0;
  run(FlowState::from_velocity(taylor_green_field(g)), p, 20, [&](const RunSample& s) {
    worst = std::max(worst, std::abs(helicity(s.state.u, s.state.xi)));
    scale = std::max(scale, l2_norm_sq(s.state.xi));
  });
  CHECK(worst <= 1e-8 * scale);
}

TEST_CASE("velocity-induced Ricci field") {
  const Grid g(16);
  SUBCASE("zero velocity gives the zero field") {
    const SpectralVectorField z(g);
    const auto f = ricci_hat_field(z, 0.5);
    for (int c = 0; c < 6; ++c)
      for (double v : f.comp[c]) CHECK(v == 0.0);
  }
  SUBCASE("shear hand values") {
    const double gamma = 0.8;
    const auto u = field_from_closure(g, [gamma](double, double y, double) {
      return std::array<double, 3>{gamma * std::sin(y), 0.0, 0.0};
    });
    const auto f = ricci_hat_field(u, 1.0);
    for (int iy : {1, 5, 11}) {
      const std::size_t i = g.index(0, iy, 0);
      const double uy = gamma * std::sin(g.coord(iy));
      const double s12 = 0.5 * gamma * std::cos(g.coord(iy));
      CHECK(f.entry(0, 0, i) == doctest::Approx(0.5 * uy * uy).epsilon(1e-10));
      CHECK(f.entry(0, 1, i) == doctest::Approx(-s12).epsilon(1e-10));
      CHECK(std::abs(f.entry(2, 2, i)) <= 1e-12);
    }
  }
  SUBCASE("trace matches the scalar curvature of the flow connection") {
    const auto u = random_divfree_field(g, 17, 4);
    const double nu = 0.3;
    const auto f = ricci_hat_field(u, nu);
    const auto up = u.to_physical();
    const auto chart = flat_chart();
    Philox rng(17, 1);
    for (int s = 0; s < 100; ++s) {
      const int ix = int(rng.uniform() * g.n), iy = int(rng.uniform() * g.n), iz = int(rng.uniform() * g.n);
      const std::size_t i = g.index(ix, iy, iz);
      const double tr = f.entry(0, 0, i) + f.entry(1, 1, i) + f.entry(2, 2, i);
      const Vec3 uval(up[0][i], up[1][i], up[2][i]);
      const double expect = scalar_hat(chart, Vec3(g.coord(ix), g.coord(iy), g.coord(iz)), uval, nu);
      CHECK(std::abs(tr - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("diagnostics csv writing") {
  const Grid g(8);
  FluidParams p;
  p.nu = 0.1;
  p.dt = 1e-3;
  p.t_end = 0.01;
  auto series = run_series(abc_field(g), p, 2);
  const auto path = std::filesystem::temp_directory_path() / "nsgeo_diag_test.csv";
  write_diagnostics_csv(path.string(), series);
  std::ifstream is(path);
  std::string header;
  std::getline(is, header);
  CHECK(header == "time,energy,enstrophy,helicity,energy_residual,enstrophy_residual,helicity_residual");
  int rows = 0;
  std::string line;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == static_cast<int>(series.size()));
  std::filesystem::remove(path);
}
