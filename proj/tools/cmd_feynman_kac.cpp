#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>
#include <vector>

#include "commands.hpp"
#include "nsgeo/config.hpp"
#include "nsgeo/feynman_kac.hpp"
#include "nsgeo/flow.hpp"

namespace nsgeo::cli {

namespace {

bool parse_probe(const std::string& s, Vec3& out) {
  std::istringstream is(s);
  char c1, c2;
  if (!(is >> out[0] >> c1 >> out[1] >> c2 >> out[2])) return false;
  return c1 == ',' && c2 == ',';
}

/// Trilinear sampler of the curl of a spectral field, used as the initial
/// vorticity closure for non-analytic initial data.
CovectorField curl_closure(const SpectralVectorField& u) {
  auto grid = std::make_shared<Grid>(u.grid());
  auto phys = std::make_shared<std::array<std::vector<double>, 3>>(curl(u).to_physical());
  return [grid, phys](const Vec3& xw) {
    const Grid& g = *grid;
    const double hx = g.spacing();
    const double fx = xw[0] / hx, fy = xw[1] / hx, fz = xw[2] / hx;
    const int ix = static_cast<int>(std::floor(fx)), iy = static_cast<int>(std::floor(fy)),
              iz = static_cast<int>(std::floor(fz));
    const double ax = fx - ix, ay = fy - iy, az = fz - iz;
    Vec3 v = Vec3::Zero();
    for (int dz = 0; dz < 2; ++dz)
      for (int dy = 0; dy < 2; ++dy)
        for (int dx = 0; dx < 2; ++dx) {
          const double w = (dx ? ax : 1.0 - ax) * (dy ? ay : 1.0 - ay) * (dz ? az : 1.0 - az);
          const std::size_t i = g.index((ix + dx) % g.n, (iy + dy) % g.n, (iz + dz) % g.n);
          for (int j = 0; j < 3; ++j) v[j] += w * (*phys)[j][i];
        }
    return v;
  };
}

}  // namespace

int cmd_feynman_kac(const std::string& config_path, const std::vector<std::string>& probes, double t,
                    const std::string& drift_mode, long paths_override) {
  const RunConfig cfg = load_config(config_path);
  McConfig mc;
  mc.paths = paths_override > 0 ? paths_override : cfg.mc_paths;
  mc.dt = cfg.mc_dt;
  mc.seed = cfg.seed;
  mc.nu = cfg.nu;

  std::string mode = drift_mode;
  if (mode == "auto") mode = (cfg.init_kind == InitKind::abc) ? "abc" : "solver";

  DriftField drift{};
  CovectorField omega0;
  std::vector<Snapshot> snaps;
  if (mode == "abc") {
    const double A = cfg.init_a, B = cfg.init_b, C = cfg.init_c;
    const double nu = cfg.nu;
    drift.velocity = [=](double s, const Vec3& x) {
      const double a = std::exp(-nu * s);
      return Vec3(a * (A * std::sin(x[2]) + C * std::cos(x[1])), a * (B * std::sin(x[0]) + A * std::cos(x[2])),
                  a * (C * std::sin(x[1]) + B * std::cos(x[0])));
    };
    drift.strain = [=](double s, const Vec3& x) {
      const double a = std::exp(-nu * s);
      Mat3 m = Mat3::Zero();
      m(0, 1) = m(1, 0) = 0.5 * a * (B * std::cos(x[0]) - C * std::sin(x[1]));
      m(0, 2) = m(2, 0) = 0.5 * a * (A * std::cos(x[2]) - B * std::sin(x[0]));
      m(1, 2) = m(2, 1) = 0.5 * a * (C * std::cos(x[1]) - A * std::sin(x[2]));
      return m;
    };
    omega0 = [=](const Vec3& x) {
      return Vec3(A * std::sin(x[2]) + C * std::cos(x[1]), B * std::sin(x[0]) + A * std::cos(x[2]),
                  C * std::sin(x[1]) + B * std::cos(x[0]));
    };
  } else if (mode == "zero") {
    omega0 = curl_closure(init_field(cfg));
  } else if (mode == "solver") {
    // integrate the flow over [0, t] and interpolate the snapshots as drift
    FluidParams params = cfg.fluid_params();
    params.t_end = t;
    const auto u0 = init_field(cfg);
    run(FlowState::from_velocity(u0), params, cfg.diag_every, [&](const RunSample& s) {
      Snapshot snap;
      snap.time = s.state.time;
      snap.nu = cfg.nu;
      snap.grid = s.state.u.grid();
      snap.fields.emplace_back("u", s.state.u);
      snaps.push_back(std::move(snap));
    });
    drift = snapshot_drift(snaps);
    omega0 = curl_closure(u0);
  } else {
    std::fprintf(stderr, "feynman-kac: unknown drift mode '%s'\n", mode.c_str());
    return kExitUsage;
  }

  std::printf("probe_x,probe_y,probe_z,est_x,est_y,est_z,stderr_x,stderr_y,stderr_z,paths\n");
  for (const std::string& p : probes) {
    Vec3 probe;
    if (!parse_probe(p, probe)) {
      std::fprintf(stderr, "feynman-kac: bad probe '%s' (expected x,y,z)\n", p.c_str());
      return kExitUsage;
    }
    const McEstimate est = feynman_kac_vorticity(probe, t, drift, omega0, flat_chart(), mc);
    std::printf("%.6g,%.6g,%.6g,%.10g,%.10g,%.10g,%.3g,%.3g,%.3g,%ld\n", probe[0], probe[1], probe[2], est.mean[0],
                est.mean[1], est.mean[2], est.stderr_c[0], est.stderr_c[1], est.stderr_c[2], est.paths);
  }
  return kExitOk;
}

}  // namespace nsgeo::cli
