#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nsgeo::cli {

// exit codes: 0 all checks pass, 1 residual over tolerance, 2 usage/config error
inline constexpr int kExitOk = 0;
inline constexpr int kExitResidual = 1;
inline constexpr int kExitUsage = 2;

int cmd_simulate(const std::string& config_path, const std::string& out_dir, double tol);
int cmd_diagnose(const std::string& snap_dir, double tol, double gap_tol);
int cmd_geometry_check(const std::string& metric, int samples, std::uint64_t seed);
int cmd_feynman_kac(const std::string& config_path, const std::vector<std::string>& probes, double t,
                    const std::string& drift_mode, long paths_override);
int cmd_bismut_square(double t, long paths, std::uint64_t seed, double dt, const std::string& kspec);
int cmd_bismut_bound(const std::vector<double>& times, int grid_n, std::uint64_t seed);
int cmd_snapshot_dump(const std::vector<std::string>& files);

}  // namespace nsgeo::cli
