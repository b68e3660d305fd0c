#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <functional>

namespace nsgeo {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using MetricFn = std::function<Mat3(const Vec3&)>;
using DMetric = std::array<Mat3, 3>;                  // dg[k](i,j) = d_k g_ij
using D2Metric = std::array<std::array<Mat3, 3>, 3>;  // d2g[l][k] = d_l d_k g

/// Smooth periodic metric chart on [0,2pi)^3. Derivative closures are
/// optional; central finite differences with step fd_step fill in for
/// whatever is missing.
struct MetricChart {
  MetricFn g;
  std::function<DMetric(const Vec3&)> dg;      // optional analytic first derivatives
  std::function<D2Metric(const Vec3&)> d2g;    // optional analytic second derivatives
  double fd_step = 1e-4;
  bool periodic = true;
  bool flat = false;  // identity metric everywhere; enables exact shortcuts

  Mat3 metric(const Vec3& x) const { return g(x); }
  Mat3 inverse_metric(const Vec3& x) const;
  DMetric dmetric(const Vec3& x) const;
  D2Metric d2metric(const Vec3& x) const;

  /// Deterministic orthonormal frame from the Cholesky factorization
  /// g = L L^T: columns of L^{-T} satisfy r^T g r = Id.
  Mat3 frame(const Vec3& x) const;

  /// Largest |g(x + 2pi e_j) - g(x)| over axes at a point; zero when periodic.
  double periodicity_defect(const Vec3& x) const;
};

MetricChart flat_chart();

/// g = exp(2 phi) delta with phi = amp * sin(x1); analytic derivatives.
MetricChart conformal_chart(double amp = 0.1);

/// diag(1 + amp * sin(x1), 1, 1); analytic derivatives.
MetricChart diagonal_chart(double amp = 0.3);

/// Stereographic patch of the round unit 3-sphere, g = 4 delta / (1+|x|^2)^2.
/// Not periodic; pointwise use in tests only.
MetricChart sphere_patch_chart();

/// SPD trigonometric perturbation of the flat metric with analytic first and
/// second derivatives; reproducible from the seed. Perturbation norm stays
/// below ~0.45 so Cholesky always succeeds.
MetricChart random_trig_chart(std::uint64_t seed);

/// Vector field closure with analytic Jacobian, for pointwise tensor tests.
struct AnalyticVectorField {
  std::function<Vec3(const Vec3&)> value;
  std::function<Mat3(const Vec3&)> jacobian;  // J(k,i) = d_i v^k
};

AnalyticVectorField random_trig_vector(std::uint64_t seed);

}  // namespace nsgeo
