#pragma once

#include "nsgeo/frame_sde.hpp"
#include "nsgeo/snapshot.hpp"

namespace nsgeo {

using CovectorField = std::function<Vec3(const Vec3&)>;

/// Monte Carlo estimate of the vorticity 1-form at (probe, t) from the
/// backward frame-bundle representation: paths run the SDE with drift
/// -u(t - s, .), the resolvent transports with J = K - nu ric, and the
/// payload is Q * F_{omega0}(r_final), mapped back to coordinates at the
/// probe. At t = 0 the initial value is returned exactly.
McEstimate feynman_kac_vorticity(const Vec3& probe, double t, const DriftField& drift,
                                 const CovectorField& omega0, const MetricChart& chart, const McConfig& cfg);

struct HeatFormEstimate {
  double value = 0.0;
  double stderr_v = 0.0;
  long paths = 0;
  double ric_min = 0.0;  // smallest Ricci eigenvalue sampled along the paths
};

/// (T_t phi)(V0) at x0 via the driftless frame Brownian motion (unit
/// diffusion; T_t = exp(-t box / 2)) twisted by the heat resolvent.
HeatFormEstimate heat_semigroup_form(const CovectorField& phi, double t, const MetricChart& chart,
                                     const Vec3& x0, const Vec3& v0, const McConfig& cfg);

/// Drift interpolated from a time-ordered sequence of snapshots: trilinear in
/// space, linear in time. Strain fields are precomputed per snapshot.
DriftField snapshot_drift(const std::vector<Snapshot>& snaps);

}  // namespace nsgeo
