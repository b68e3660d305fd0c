#pragma once

#include <functional>
#include <vector>

#include "nsgeo/spectral_field.hpp"

namespace nsgeo {

enum class Scheme { if_rk4, mollified };

struct FluidParams {
  double nu = 0.1;
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::if_rk4;
  double epsilon = 0.0;  // heat-mollifier parameter, mollified scheme only

  void validate() const;
  /// dt * nu * (n/2)^2, reported for stability bookkeeping; the viscous part
  /// itself is integrated exactly.
  double stability_ratio(const Grid& g) const { return dt * nu * 0.25 * g.n * g.n; }
};

struct FlowState {
  double time = 0.0;
  SpectralVectorField u;
  SpectralVectorField xi;  // co-evolved vorticity, cross-checked against curl(u)

  static FlowState from_velocity(const SpectralVectorField& u0, double t0 = 0.0);

  /// Pressure recovered from the velocity; diagnostic only, never part of
  /// the evolved state.
  SpectralScalarField pressure() const;
};

/// Full velocity right-hand side -P(grad_u u) - nu * curlcurl(u).
SpectralVectorField ns_rhs(const SpectralVectorField& u, double nu);

/// Vorticity right-hand side -grad_u xi + nu lap(xi) + S(u) xi with S the
/// rate of strain.
SpectralVectorField vorticity_rhs(const SpectralVectorField& xi, const SpectralVectorField& u, double nu);

/// Mollified right-hand side -T_e P(grad_{T_e u} T_e u) - nu T_e curlcurl(T_e u)
/// with T_e the heat multiplier exp(-eps |k|^2 / 2).
SpectralVectorField mollified_rhs(const SpectralVectorField& u, const FluidParams& p);

/// One integrating-factor RK4 step of the joint (u, xi) system; the viscous
/// multiplier is applied exactly. Re-projects u and aborts on non-finite
/// state. The mollified scheme advances u alone and refreshes xi = curl(u).
FlowState step(const FlowState& state, const FluidParams& p);

/// Pressure recovered diagnostically from the velocity: p_hat = i k . (grad_u u)_hat / |k|^2.
SpectralScalarField recover_pressure(const SpectralVectorField& u);

struct RunSample {
  FlowState state;
  long step_index = 0;
};

/// Advance from the initial state to t_end, invoking on_sample every
/// diag_every steps (and at t=0 and the final step).
void run(FlowState state, const FluidParams& p, int diag_every,
         const std::function<void(const RunSample&)>& on_sample);

}  // namespace nsgeo
