#pragma once

#include "nsgeo/metric.hpp"

namespace nsgeo {

/// Christoffel coefficients G[k](i,j) = Gamma^k_ij.
struct Christoffel {
  std::array<Mat3, 3> G;
  const Mat3& operator[](int k) const { return G[k]; }
  Mat3& operator[](int k) { return G[k]; }
};

/// Torsion components T[k](i,j) = T^k_ij, antisymmetric in (i,j).
struct Torsion {
  std::array<Mat3, 3> T;
  Vec3 apply(const Vec3& X, const Vec3& Y) const {
    Vec3 out;
    for (int k = 0; k < 3; ++k) out[k] = X.dot(T[k] * Y);
    return out;
  }
};

/// Pointwise bundle of everything the velocity-deformed connection carries.
struct ConnectionTensors {
  Vec3 point;
  Christoffel gamma0;
  Christoffel gamma_v;
  Torsion torsion;
  Mat3 ric0;
  Mat3 ric_v;
  Mat3 ric_hat_assembled;
  Mat3 ric_hat_closed;
};

// ---- Levi-Civita ------------------------------------------------------------

Christoffel christoffel_lc(const MetricChart& chart, const Vec3& x);

/// Ricci operator of the Levi-Civita connection, Ric(X) = sum_a R(X, E_a) E_a,
/// as a matrix acting on coordinate components. Needs second metric
/// derivatives (analytic if supplied).
Mat3 ricci_lc(const MetricChart& chart, const Vec3& x);

double scalar_lc(const MetricChart& chart, const Vec3& x);

// ---- velocity-deformed connection -------------------------------------------

/// Gamma^k_ij = Gamma^{0,k}_ij - (2/(n-1)) (delta_ki (g v)_j - g_ij v^k), n = 3.
Christoffel christoffel_v(const MetricChart& chart, const Vec3& x, const Vec3& v);

/// K_v(X, Y) = <Y,v> X - <X,Y> v with metric inner products.
Vec3 k_deform(const Mat3& g, const Vec3& v, const Vec3& X, const Vec3& Y);

/// T^v(X,Y) = (-2/(n-1)) (<Y,v> X - <X,v> Y); antisymmetric, not
/// skew-symmetric as a (0,3) tensor unless v = 0.
Torsion torsion_v(const Mat3& g, const Vec3& v);

/// Covariant derivative operator X -> nabla^0_X v as a matrix; dv(k,i) = d_i v^k.
Mat3 nabla0_operator(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv);

double divergence0(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv);

/// Metric-symmetric part of nabla^0 v: g^{-1} sym(g A) with A = nabla0_operator.
Mat3 nabla0_sym_operator(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv);

/// Ricci operator of the deformed connection via the general-dimension
/// formula evaluated at n = 3.
Mat3 ricci_v(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv);

/// Same tensor assembled from the dimension-3 reduction
/// Ric^0 - K_v(.,v) + nabla^0 v + div(v) Id; kept as an independent code path.
Mat3 ricci_v_dim3(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv);

struct IntrinsicRicci {
  Mat3 assembled;  // Ric^v + torsion divergence, built from component derivatives
  Mat3 closed;     // Ric^0 + 2 v (gv)^T + 2 sym(nabla^0 v)
};

/// Both routes to the intrinsic Ricci tensor; they must agree in dimension 3.
IntrinsicRicci intrinsic_ricci(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv);

/// Intrinsic Ricci of the flow connection (v = -u / 2 nu):
/// Ric^0 + (1/2 nu^2) u (gu)^T - (1/nu) sym(nabla^0 u).
Mat3 intrinsic_ricci_t(const MetricChart& chart, const Vec3& x, const Vec3& u, const Mat3& du, double nu);

/// Scalar curvature of the flow connection: Scal^0 + (1/2 nu^2) |u|^2.
double scalar_hat(const MetricChart& chart, const Vec3& x, const Vec3& u, double nu);

ConnectionTensors connection_tensors(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv);

// ---- finite-difference curvature oracle --------------------------------------

/// Riemann tensor R[l][k](i,j) of an arbitrary Christoffel field, with the
/// derivative of Gamma taken by a five-point stencil of step h. Used as the
/// independent cross-check for the closed-form Ricci routes.
struct Riemann {
  // R(d_i, d_j) d_k = R[l][k](i,j) d_l
  std::array<std::array<Mat3, 3>, 3> R;
};

Riemann riemann_fd(const std::function<Christoffel(const Vec3&)>& gamma, const Vec3& x, double h = 1e-4);

/// Contract a Riemann tensor to the Ricci operator with the metric at x:
/// Ric(X) = sum_a R(X, E_a) E_a = g^{jk} R^l_{kij}.
Mat3 ricci_from_riemann(const Riemann& rm, const Mat3& g);

}  // namespace nsgeo
