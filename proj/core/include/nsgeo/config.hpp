#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "nsgeo/flow.hpp"
#include "nsgeo/init.hpp"

namespace nsgeo {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class InitKind { abc, taylor_green, random_divfree, file };

/// Typed run configuration parsed from `key = value` lines ('#' comments).
/// Unknown keys, duplicates, missing required keys and out-of-range values
/// are all hard errors carrying line numbers.
struct RunConfig {
  int grid_n = 0;                      // grid.n (required)
  double dealias_fraction = 2.0 / 3.0; // grid.dealias_fraction
  double nu = 0.0;                     // fluid.nu (required)
  double dt = 0.0;                     // time.dt (required)
  double t_end = 0.0;                  // time.t_end (required)
  int diag_every = 10;                 // time.diag_every
  InitKind init_kind = InitKind::abc;  // init.kind (required)
  double init_a = 1.0, init_b = 1.0, init_c = 1.0;  // init.a/b/c
  int init_kmax = 4;                   // init.kmax
  std::string init_path;               // init.path (required for kind=file)
  long mc_paths = 10000;               // mc.paths
  double mc_dt = 1e-3;                 // mc.dt
  std::uint64_t seed = 1;              // seed
  Scheme scheme = Scheme::if_rk4;      // scheme
  double epsilon = 0.0;                // epsilon (required for scheme=mollified)

  Grid grid() const { return Grid(grid_n, dealias_fraction); }
  FluidParams fluid_params() const;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Divergence-free, zero-mean initial data for the configured kind.
SpectralVectorField init_field(const RunConfig& cfg);

}  // namespace nsgeo
