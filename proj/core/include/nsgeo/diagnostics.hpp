#pragma once

#include <string>
#include <vector>

#include "nsgeo/flow.hpp"
#include "nsgeo/spectral_field.hpp"

namespace nsgeo {

/// One sampled row of integral functionals plus the balance-law residuals
/// filled in after the run (centered differences need both neighbors, so the
/// two endpoint rows keep NaN residuals).
struct DiagnosticsRecord {
  double time = 0.0;

  double energy = 0.0;              // (1/2) ||u||^2
  double enstrophy = 0.0;           // (1/2) ||xi||^2
  double helicity = 0.0;            // integral of xi . u
  double grad_u_sq = 0.0;           // ||grad u||^2
  double grad_xi_sq = 0.0;          // ||grad xi||^2
  double helical_density_sq = 0.0;  // integral of (xi . u)^2
  double ric_hat_quad = 0.0;        // integral of (RicHat xi) . xi
  double strain_quad = 0.0;         // integral of (S(u) xi) . xi
  double curl_xi_dot_xi = 0.0;      // integral of (curl xi) . xi
  double grad_xi_dot_grad_u = 0.0;  // integral of grad xi : grad u
  double ric_hat_u_dot_xi = 0.0;    // integral of xi . (RicHat u)
  double helicity_u2 = 0.0;         // integral of (xi . u) |u|^2
  double vorticity_consistency = 0.0;  // ||curl u - xi|| / ||xi||
  double enstrophy_forms_gap = 0.0;    // pointwise gap between the two enstrophy integrands

  double residual_energy = 0.0;
  double residual_enstrophy = 0.0;        // strain form
  double residual_enstrophy_ricci = 0.0;  // helicity/Ricci form
  double residual_helicity = 0.0;
};

DiagnosticsRecord sample_diagnostics(const FlowState& state, double nu);

/// Centered-difference residuals of the energy, enstrophy (both forms) and
/// helicity balance laws, each normalized by the largest participating term
/// with an absolute floor. Endpoints are left NaN.
void fill_residuals(std::vector<DiagnosticsRecord>& series, double nu, double floor = 1e-14);

double helicity(const SpectralVectorField& u, const SpectralVectorField& xi);

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& series);

struct ResidualSummary {
  double max_energy = 0.0;
  double max_enstrophy = 0.0;
  double max_enstrophy_ricci = 0.0;
  double max_helicity = 0.0;
  double max_forms_gap = 0.0;
  double max_vorticity_consistency = 0.0;
};

ResidualSummary summarize_residuals(const std::vector<DiagnosticsRecord>& series);

}  // namespace nsgeo
