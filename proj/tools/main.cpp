#include <CLI11.hpp>

#include <cstdio>
#include <exception>

#include "commands.hpp"
#include "nsgeo/config.hpp"

int main(int argc, char** argv) {
  using namespace nsgeo::cli;
  CLI::App app{"nsgeo: periodic-box flow solver and geometric identity checker"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", snap_dir, metric = "flat", drift = "auto", kspec, mode = "square";
  std::vector<std::string> probes, files;
  std::vector<double> bound_times = {0.1, 0.5, 1.0};
  double t = 0.5, tol = 1e-3, gap_tol = 1e-10, dt = 1e-3;
  int samples = 100, grid_n = 16;
  long paths = 100000;
  std::uint64_t seed = 1;

  auto* sim = app.add_subcommand("simulate", "advance the flow and write snapshots + diagnostics.csv");
  sim->add_option("--config", config_path, "run configuration file")->required();
  sim->add_option("--out", out_dir, "output directory");
  sim->add_option("--tol", tol, "relative residual tolerance for the exit code");

  auto* diag = app.add_subcommand("diagnose", "recompute balance-law residuals from snapshots");
  diag->add_option("--snapshots", snap_dir, "directory of .nsrh1 snapshots")->required();
  diag->add_option("--tol", tol, "relative residual tolerance");
  diag->add_option("--gap-tol", gap_tol, "pointwise tolerance for the enstrophy integrand forms");

  auto* geo = app.add_subcommand("geometry-check", "pointwise connection/curvature identity table");
  geo->add_option("--metric", metric, "flat | conformal | diagonal");
  geo->add_option("--samples", samples, "number of random sample points");
  geo->add_option("--seed", seed, "sampling seed");

  auto* fk = app.add_subcommand("feynman-kac", "Monte Carlo vorticity estimates at probe points");
  fk->add_option("--config", config_path, "run configuration file")->required();
  fk->add_option("--probe", probes, "probe point x,y,z (repeatable)")->required();
  fk->add_option("--t", t, "evaluation time");
  fk->add_option("--drift", drift, "auto | abc | zero | solver");
  fk->add_option("--paths", paths, "override mc.paths from the config")->default_val(0);

  auto* bis = app.add_subcommand("bismut", "stochastic Laplacian estimator / norm-bound table");
  bis->add_option("--mode", mode, "square | bound");
  bis->add_option("--t", t, "horizon for mode=square");
  bis->add_option("--paths", paths, "paths for mode=square");
  bis->add_option("--seed", seed, "rng seed");
  bis->add_option("--dt", dt, "path step");
  bis->add_option("--k", kspec, "wavenumber kx,ky,kz of the test form");
  bis->add_option("--times", bound_times, "horizons for mode=bound");
  bis->add_option("--n", grid_n, "grid resolution for mode=bound");

  auto* dump = app.add_subcommand("snapshot-dump", "print snapshot headers");
  dump->add_option("files", files, "snapshot files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(config_path, out_dir, tol);
    if (diag->parsed()) return cmd_diagnose(snap_dir, tol, gap_tol);
    if (geo->parsed()) return cmd_geometry_check(metric, samples, seed);
    if (fk->parsed()) return cmd_feynman_kac(config_path, probes, t, drift, paths);
    if (bis->parsed()) {
      if (mode == "square") return cmd_bismut_square(t, paths, seed, dt, kspec);
      if (mode == "bound") return cmd_bismut_bound(bound_times, grid_n, seed);
      std::fprintf(stderr, "bismut: unknown mode '%s'\n", mode.c_str());
      return kExitUsage;
    }
    if (dump->parsed()) return cmd_snapshot_dump(files);
  } catch (const nsgeo::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
