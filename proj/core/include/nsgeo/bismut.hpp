#pragma once

#include "nsgeo/feynman_kac.hpp"
#include "nsgeo/spectral_field.hpp"

namespace nsgeo {

struct BismutEstimate {
  double value = 0.0;     // estimate of (box T_t phi, v) at x0
  double stderr_v = 0.0;
  long paths = 0;
  double half_time_proj_var = 0.0;  // sample variance of int_0^{t/2} <Q1 v, dB>
};

/// Stochastic second-derivative estimator on the flat chart: accumulates the
/// martingale built from the first-half wedge and projection integrals and
/// weights phi at the endpoint by -(4/t^2). The resolvents ride along (they
/// stay identity on the flat chart). x0 is the evaluation point of the
/// driftless unit-diffusion paths.
BismutEstimate bismut_square_estimator(const CovectorField& phi, const Vec3& v, double t, const Vec3& x0,
                                       const McConfig& cfg);

struct NormBoundReport {
  double t = 0.0;
  double lhs = 0.0;  // ||box T_t phi||_2, computed spectrally
  double rhs = 0.0;  // (2/t) e^{3 kp t/2} sqrt(2(n-1) e^{3 k2p t/2} + 1) ||phi||_2
  bool ok = false;
};

/// Spectral check of the Laplacian-of-heat-semigroup norm bound for a 1-form
/// given by a spectral field; kappa1/kappa2 are the curvature lower-bound
/// constants (zero on the flat torus).
NormBoundReport verify_norm_bound(const SpectralVectorField& phi, double t, double kappa1 = 0.0,
                                  double kappa2 = 0.0);

}  // namespace nsgeo
