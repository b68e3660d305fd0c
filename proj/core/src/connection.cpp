#include "nsgeo/connection.hpp"

#include <stdexcept>

namespace nsgeo {

namespace {

// deformation coefficient 2/(n-1) at n = 3
constexpr double kDeform = 1.0;

Christoffel christoffel_from(const Mat3& ginv, const DMetric& dg) {
  Christoffel out;
  for (int k = 0; k < 3; ++k) out[k] = Mat3::Zero();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int l = 0; l < 3; ++l)
          acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        out[k](i, j) = 0.5 * acc;
      }
  return out;
}

// d_m Gamma^k_ij from analytic metric derivatives
std::array<Christoffel, 3> christoffel_derivative(const MetricChart& chart, const Vec3& x) {
  const Mat3 ginv = chart.inverse_metric(x);
  const DMetric dg = chart.dmetric(x);
  const D2Metric d2g = chart.d2metric(x);
  // d_m g^{kl} = -g^{ka} (d_m g_ab) g^{bl}
  std::array<Mat3, 3> dginv;
  for (int m = 0; m < 3; ++m) dginv[m] = -ginv * dg[m] * ginv;
  std::array<Christoffel, 3> out;
  for (int m = 0; m < 3; ++m) {
    for (int k = 0; k < 3; ++k) out[m][k] = Mat3::Zero();
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double acc = 0.0;
          for (int l = 0; l < 3; ++l) {
            acc += dginv[m](k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
            acc += ginv(k, l) * (d2g[m][i](j, l) + d2g[m][j](i, l) - d2g[m][l](i, j));
          }
          out[m][k](i, j) = 0.5 * acc;
        }
  }
  return out;
}

Mat3 ricci_from_gamma(const Christoffel& G, const std::array<Christoffel, 3>& dG, const Mat3& ginv) {
  // R^l_{kij} = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik
  // Ric(X)^l = g^{jk} R^l_{kij} X^i
  Mat3 ric = Mat3::Zero();
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double r = dG[i][l](j, k) - dG[j][l](i, k);
          for (int m = 0; m < 3; ++m) r += G[l](i, m) * G[m](j, k) - G[l](j, m) * G[m](i, k);
          acc += ginv(j, k) * r;
        }
      ric(l, i) = acc;
    }
  return ric;
}

}  // namespace

Christoffel christoffel_lc(const MetricChart& chart, const Vec3& x) {
  return christoffel_from(chart.inverse_metric(x), chart.dmetric(x));
}

Mat3 ricci_lc(const MetricChart& chart, const Vec3& x) {
  const Mat3 ginv = chart.inverse_metric(x);
  const Christoffel G = christoffel_lc(chart, x);
  const auto dG = christoffel_derivative(chart, x);
  return ricci_from_gamma(G, dG, ginv);
}

double scalar_lc(const MetricChart& chart, const Vec3& x) {
  return ricci_lc(chart, x).trace();
}

Christoffel christoffel_v(const MetricChart& chart, const Vec3& x, const Vec3& v) {
  Christoffel out = christoffel_lc(chart, x);
  const Mat3 g = chart.metric(x);
  const Vec3 gv = g * v;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        out[k](i, j) -= kDeform * ((k == i ? gv[j] : 0.0) - g(i, j) * v[k]);
  return out;
}

Vec3 k_deform(const Mat3& g, const Vec3& v, const Vec3& X, const Vec3& Y) {
  return (Y.dot(g * v)) * X - (X.dot(g * Y)) * v;
}

Torsion torsion_v(const Mat3& g, const Vec3& v) {
  // T^v(X,Y) = -(2/(n-1)) (<Y,v> X - <X,v> Y)  =>  T^k_ij = -(gv)_j d_ki + (gv)_i d_kj
  Torsion out;
  const Vec3 gv = g * v;
  for (int k = 0; k < 3; ++k) {
    out.T[k] = Mat3::Zero();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        out.T[k](i, j) = -kDeform * ((k == i ? gv[j] : 0.0) - (k == j ? gv[i] : 0.0));
  }
  return out;
}

Mat3 nabla0_operator(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv) {
  const Christoffel G = christoffel_lc(chart, x);
  Mat3 A = dv;  // A(k,i) = d_i v^k
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 3; ++j) acc += G[k](i, j) * v[j];
      A(k, i) += acc;
    }
  return A;
}

double divergence0(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv) {
  return nabla0_operator(chart, x, v, dv).trace();
}

Mat3 nabla0_sym_operator(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv) {
  const Mat3 g = chart.metric(x);
  const Mat3 A = nabla0_operator(chart, x, v, dv);
  const Mat3 gA = g * A;
  return chart.inverse_metric(x) * (0.5 * (gA + gA.transpose()));
}

Mat3 ricci_v(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv) {
  // general n: Ric^0 - 4(n-2)/(n-1)^2 K_v(., v) + 2(n-2)/(n-1) nabla^0 v + 2/(n-1) div(v) Id
  constexpr double n = 3.0;
  constexpr double c1 = 4.0 * (n - 2.0) / ((n - 1.0) * (n - 1.0));
  constexpr double c2 = 2.0 * (n - 2.0) / (n - 1.0);
  constexpr double c3 = 2.0 / (n - 1.0);
  const Mat3 g = chart.metric(x);
  const Vec3 gv = g * v;
  // K_v(X, v) = <v,v> X - <X,v> v as an operator
  const Mat3 Kv = v.dot(gv) * Mat3::Identity() - v * gv.transpose();
  const Mat3 A = nabla0_operator(chart, x, v, dv);
  return ricci_lc(chart, x) - c1 * Kv + c2 * A + c3 * A.trace() * Mat3::Identity();
}

Mat3 ricci_v_dim3(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv) {
  const Mat3 g = chart.metric(x);
  const Vec3 gv = g * v;
  const Mat3 Kv = v.dot(gv) * Mat3::Identity() - v * gv.transpose();
  const Mat3 A = nabla0_operator(chart, x, v, dv);
  return ricci_lc(chart, x) - Kv + A + A.trace() * Mat3::Identity();
}

IntrinsicRicci intrinsic_ricci(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv) {
  const Mat3 g = chart.metric(x);
  const Mat3 ginv = chart.inverse_metric(x);
  const DMetric dg = chart.dmetric(x);
  const Christoffel Gv = christoffel_v(chart, x, v);

  // torsion divergence sum_i (nabla^v_{e_i} T^v)(X, e_i) over an orthonormal
  // frame, with components
  //   (nabla_c T)^k_ij = d_c T^k_ij + G^k_cm T^m_ij - G^m_ci T^k_mj - G^m_cj T^k_im
  // and the frame contraction realized as g^{cj}.
  const Vec3 gv = g * v;
  // T^k_ij = -((gv)_j d_ki - (gv)_i d_kj); d_c T needs d_c(gv) = (d_c g) v + g d_c v
  std::array<Vec3, 3> dgv;
  for (int c = 0; c < 3; ++c) dgv[c] = dg[c] * v + g * dv.col(c);

  auto T = [&](int k, int i, int j) { return -(((k == i) ? gv[j] : 0.0) - ((k == j) ? gv[i] : 0.0)); };
  auto dT = [&](int c, int k, int i, int j) {
    return -(((k == i) ? dgv[c][j] : 0.0) - ((k == j) ? dgv[c][i] : 0.0));
  };

  Mat3 tdiv = Mat3::Zero();  // tdiv(k, m): component k of the sum with X = e_m
  for (int k = 0; k < 3; ++k)
    for (int m = 0; m < 3; ++m) {
      double acc = 0.0;
      for (int c = 0; c < 3; ++c)
        for (int j = 0; j < 3; ++j) {
          double nod = dT(c, k, m, j);
          for (int p = 0; p < 3; ++p) {
            nod += Gv[k](c, p) * T(p, m, j);
            nod -= Gv[p](c, m) * T(k, p, j);
            nod -= Gv[p](c, j) * T(k, m, p);
          }
          acc += ginv(c, j) * nod;
        }
      tdiv(k, m) = acc;
    }

  IntrinsicRicci out;
  out.assembled = ricci_v(chart, x, v, dv) + tdiv;
  out.closed = ricci_lc(chart, x) + 2.0 * v * gv.transpose() + 2.0 * nabla0_sym_operator(chart, x, v, dv);
  return out;
}

Mat3 intrinsic_ricci_t(const MetricChart& chart, const Vec3& x, const Vec3& u, const Mat3& du, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("intrinsic_ricci_t: nu must be positive");
  const Vec3 gu = chart.metric(x) * u;
  return ricci_lc(chart, x) + (0.5 / (nu * nu)) * u * gu.transpose() -
         (1.0 / nu) * nabla0_sym_operator(chart, x, u, du);
}

double scalar_hat(const MetricChart& chart, const Vec3& x, const Vec3& u, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("scalar_hat: nu must be positive");
  const double u2 = u.dot(chart.metric(x) * u);
  return scalar_lc(chart, x) + (0.5 / (nu * nu)) * u2;
}

ConnectionTensors connection_tensors(const MetricChart& chart, const Vec3& x, const Vec3& v, const Mat3& dv) {
  ConnectionTensors out;
  out.point = x;
  out.gamma0 = christoffel_lc(chart, x);
  out.gamma_v = christoffel_v(chart, x, v);
  out.torsion = torsion_v(chart.metric(x), v);
  out.ric0 = ricci_lc(chart, x);
  out.ric_v = ricci_v(chart, x, v, dv);
  const IntrinsicRicci ir = intrinsic_ricci(chart, x, v, dv);
  out.ric_hat_assembled = ir.assembled;
  out.ric_hat_closed = ir.closed;
  return out;
}

Riemann riemann_fd(const std::function<Christoffel(const Vec3&)>& gamma, const Vec3& x, double h) {
  // five-point stencil for d_i Gamma
  std::array<Christoffel, 3> dG;
  for (int i = 0; i < 3; ++i) {
    Vec3 xp = x, xm = x, xpp = x, xmm = x;
    xp[i] += h;
    xm[i] -= h;
    xpp[i] += 2.0 * h;
    xmm[i] -= 2.0 * h;
    const Christoffel gp = gamma(xp), gm = gamma(xm), gpp = gamma(xpp), gmm = gamma(xmm);
    for (int k = 0; k < 3; ++k)
      dG[i][k] = (8.0 * (gp[k] - gm[k]) - (gpp[k] - gmm[k])) / (12.0 * h);
  }
  const Christoffel G = gamma(x);
  Riemann rm;
  for (int l = 0; l < 3; ++l)
    for (int k = 0; k < 3; ++k) {
      rm.R[l][k] = Mat3::Zero();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          double r = dG[i][l](j, k) - dG[j][l](i, k);
          for (int m = 0; m < 3; ++m) r += G[l](i, m) * G[m](j, k) - G[l](j, m) * G[m](i, k);
          rm.R[l][k](i, j) = r;
        }
    }
  return rm;
}

Mat3 ricci_from_riemann(const Riemann& rm, const Mat3& g) {
  const Mat3 ginv = g.llt().solve(Mat3::Identity());
  Mat3 ric = Mat3::Zero();
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) acc += ginv(j, k) * rm.R[l][k](i, j);
      ric(l, i) = acc;
    }
  return ric;
}

}  // namespace nsgeo
