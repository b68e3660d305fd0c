#include <cmath>
#include <cstdio>
#include <sstream>

#include "commands.hpp"
#include "nsgeo/bismut.hpp"
#include "nsgeo/init.hpp"

namespace nsgeo::cli {

int cmd_bismut_square(double t, long paths, std::uint64_t seed, double dt, const std::string& kspec) {
  int kx = 1, ky = 1, kz = 0;
  if (!kspec.empty()) {
    std::istringstream is(kspec);
    char c1, c2;
    if (!(is >> kx >> c1 >> ky >> c2 >> kz) || c1 != ',' || c2 != ',') {
      std::fprintf(stderr, "bismut: bad --k value '%s' (expected kx,ky,kz)\n", kspec.c_str());
      return kExitUsage;
    }
  }
  const Vec3 kvec(kx, ky, kz);
  const Vec3 c(0.9, -0.4, 0.3);
  const double theta = 0.6;
  auto phi = [&](const Vec3& x) -> Vec3 { return std::cos(kvec.dot(x) + theta) * c; };
  const Vec3 x0(0.3, 1.4, 2.0);
  const Vec3 v(0.2, -1.0, 0.5);

  McConfig cfg;
  cfg.paths = paths;
  cfg.dt = dt;
  cfg.seed = seed;
  cfg.nu = 1.0;  // unit-diffusion heat flow
  const BismutEstimate est = bismut_square_estimator(phi, v, t, x0, cfg);
  const double k2 = kvec.squaredNorm();
  const double oracle = k2 * std::exp(-0.5 * t * k2) * std::cos(kvec.dot(x0) + theta) * c.dot(v);
  const double dev = std::abs(est.value - oracle);
  const bool pass = dev <= 3.0 * est.stderr_v;

  std::printf("%-26s %s\n", "quantity", "value");
  std::printf("%-26s %ld\n", "paths", est.paths);
  std::printf("%-26s %.8g\n", "estimate", est.value);
  std::printf("%-26s %.3g\n", "stderr", est.stderr_v);
  std::printf("%-26s %.8g\n", "spectral oracle", oracle);
  std::printf("%-26s %.3g (<= 3 stderr: %s)\n", "deviation", dev, pass ? "yes" : "NO");
  const double var_expect = 0.5 * t * v.squaredNorm();
  const double var_dev = std::abs(est.half_time_proj_var - var_expect) / var_expect;
  std::printf("%-26s %.6g (expected %.6g, rel dev %.2g)\n", "half-time proj variance", est.half_time_proj_var,
              var_expect, var_dev);
  return pass && var_dev <= 0.05 ? kExitOk : kExitResidual;
}

int cmd_bismut_bound(const std::vector<double>& times, int grid_n, std::uint64_t seed) {
  const Grid g(grid_n);
  const auto phi = random_divfree_field(g, seed, std::max(2, grid_n / 4));
  bool ok = true;
  std::printf("%-8s %-14s %-14s %s\n", "t", "lhs", "rhs", "status");
  for (double t : times) {
    const NormBoundReport rep = verify_norm_bound(phi, t);
    ok = ok && rep.ok;
    std::printf("%-8g %-14.6g %-14.6g %s\n", rep.t, rep.lhs, rep.rhs, rep.ok ? "PASS" : "FAIL");
  }
  return ok ? kExitOk : kExitResidual;
}

}  // namespace nsgeo::cli
