#include "nsgeo/metric.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "nsgeo/grid.hpp"
#include "nsgeo/rng.hpp"

namespace nsgeo {

Mat3 MetricChart::inverse_metric(const Vec3& x) const {
  const Mat3 gm = g(x);
  Eigen::LLT<Mat3> llt(gm);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("MetricChart: metric is not SPD at the requested point");
  return llt.solve(Mat3::Identity());
}

DMetric MetricChart::dmetric(const Vec3& x) const {
  if (dg) return dg(x);
  DMetric out;
  const double h = fd_step;
  for (int k = 0; k < 3; ++k) {
    Vec3 xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    out[k] = (g(xp) - g(xm)) / (2.0 * h);
  }
  return out;
}

D2Metric MetricChart::d2metric(const Vec3& x) const {
  if (d2g) return d2g(x);
  D2Metric out;
  const double h = fd_step;
  for (int l = 0; l < 3; ++l) {
    for (int k = 0; k < 3; ++k) {
      if (l == k) {
        Vec3 xp = x, xm = x;
        xp[k] += h;
        xm[k] -= h;
        out[l][k] = (g(xp) - 2.0 * g(x) + g(xm)) / (h * h);
      } else {
        Vec3 xpp = x, xpm = x, xmp = x, xmm = x;
        xpp[l] += h; xpp[k] += h;
        xpm[l] += h; xpm[k] -= h;
        xmp[l] -= h; xmp[k] += h;
        xmm[l] -= h; xmm[k] -= h;
        out[l][k] = (g(xpp) - g(xpm) - g(xmp) + g(xmm)) / (4.0 * h * h);
      }
    }
  }
  return out;
}

Mat3 MetricChart::frame(const Vec3& x) const {
  const Mat3 gm = g(x);
  Eigen::LLT<Mat3> llt(gm);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("MetricChart: metric is not SPD at the requested point");
  const Mat3 L = llt.matrixL();
  return L.transpose().inverse();
}

double MetricChart::periodicity_defect(const Vec3& x) const {
  double worst = 0.0;
  const Mat3 g0 = g(x);
  for (int j = 0; j < 3; ++j) {
    Vec3 xs = x;
    xs[j] += kTwoPi;
    worst = std::max(worst, (g(xs) - g0).cwiseAbs().maxCoeff());
  }
  return worst;
}

MetricChart flat_chart() {
  MetricChart c;
  c.flat = true;
  c.g = [](const Vec3&) { return Mat3::Identity(); };
  c.dg = [](const Vec3&) { return DMetric{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()}; };
  c.d2g = [](const Vec3&) {
    D2Metric d{};
    for (auto& row : d)
      for (auto& m : row) m = Mat3::Zero();
    return d;
  };
  return c;
}

MetricChart conformal_chart(double amp) {
  MetricChart c;
  auto phi = [amp](const Vec3& x) { return amp * std::sin(x[0]); };
  auto dphi = [amp](const Vec3& x) { return Vec3(amp * std::cos(x[0]), 0.0, 0.0); };
  auto d2phi = [amp](const Vec3& x) {
    Mat3 h = Mat3::Zero();
    h(0, 0) = -amp * std::sin(x[0]);
    return h;
  };
  c.g = [phi](const Vec3& x) { return Mat3(std::exp(2.0 * phi(x)) * Mat3::Identity()); };
  c.dg = [phi, dphi](const Vec3& x) {
    const double f = std::exp(2.0 * phi(x));
    const Vec3 dp = dphi(x);
    DMetric out;
    for (int k = 0; k < 3; ++k) out[k] = 2.0 * dp[k] * f * Mat3::Identity();
    return out;
  };
  c.d2g = [phi, dphi, d2phi](const Vec3& x) {
    const double f = std::exp(2.0 * phi(x));
    const Vec3 dp = dphi(x);
    const Mat3 hp = d2phi(x);
    D2Metric out;
    for (int l = 0; l < 3; ++l)
      for (int k = 0; k < 3; ++k)
        out[l][k] = (4.0 * dp[l] * dp[k] + 2.0 * hp(l, k)) * f * Mat3::Identity();
    return out;
  };
  return c;
}

MetricChart diagonal_chart(double amp) {
  MetricChart c;
  c.g = [amp](const Vec3& x) {
    Mat3 m = Mat3::Identity();
    m(0, 0) = 1.0 + amp * std::sin(x[0]);
    return m;
  };
  c.dg = [amp](const Vec3& x) {
    DMetric out{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    out[0](0, 0) = amp * std::cos(x[0]);
    return out;
  };
  c.d2g = [amp](const Vec3& x) {
    D2Metric out{};
    for (auto& row : out)
      for (auto& m : row) m = Mat3::Zero();
    out[0][0](0, 0) = -amp * std::sin(x[0]);
    return out;
  };
  return c;
}

MetricChart sphere_patch_chart() {
  MetricChart c;
  c.periodic = false;
  auto f = [](const Vec3& x) { return 2.0 / (1.0 + x.squaredNorm()); };  // conformal factor sqrt
  c.g = [f](const Vec3& x) { return Mat3(f(x) * f(x) * Mat3::Identity()); };
  c.dg = [f](const Vec3& x) {
    const double s = f(x);
    DMetric out;
    for (int k = 0; k < 3; ++k) out[k] = Mat3(-2.0 * s * s * s * x[k] * Mat3::Identity());
    return out;
  };
  // second derivatives of s^2 = 4/(1+|x|^2)^2:
  // d_l d_k (s^2) = -2 s^3 delta_lk + 6 s^4 x_l x_k  (with s = 2/(1+|x|^2))
  c.d2g = [f](const Vec3& x) {
    const double s = f(x);
    D2Metric out;
    for (int l = 0; l < 3; ++l)
      for (int k = 0; k < 3; ++k) {
        const double v = -2.0 * s * s * s * (l == k ? 1.0 : 0.0) + 6.0 * s * s * s * s * x[l] * x[k];
        out[l][k] = Mat3(v * Mat3::Identity());
      }
    return out;
  };
  return c;
}

namespace {

struct TrigTerm {
  Vec3 k;
  double phase;
  Mat3 amp;  // symmetric
};

}  // namespace

MetricChart random_trig_chart(std::uint64_t seed) {
  Philox rng(seed, stream_id("metric.random_trig", 0));
  auto terms = std::make_shared<std::vector<TrigTerm>>();
  double budget = 0.45;
  for (int m = 0; m < 3; ++m) {
    TrigTerm t;
    for (int j = 0; j < 3; ++j) t.k[j] = static_cast<double>(static_cast<int>(rng.uniform() * 5.0) - 2);
    t.phase = kTwoPi * rng.uniform();
    Mat3 a;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) a(i, j) = a(j, i) = rng.gaussian();
    const double scale = (budget / 3.0) / std::max(a.cwiseAbs().maxCoeff() * 3.0, 1e-12);
    t.amp = scale * a;
    terms->push_back(t);
  }
  MetricChart c;
  c.g = [terms](const Vec3& x) {
    Mat3 g = Mat3::Identity();
    for (const auto& t : *terms) g += std::cos(t.k.dot(x) + t.phase) * t.amp;
    return g;
  };
  c.dg = [terms](const Vec3& x) {
    DMetric out{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    for (const auto& t : *terms) {
      const double s = -std::sin(t.k.dot(x) + t.phase);
      for (int k = 0; k < 3; ++k) out[k] += s * t.k[k] * t.amp;
    }
    return out;
  };
  c.d2g = [terms](const Vec3& x) {
    D2Metric out{};
    for (auto& row : out)
      for (auto& m : row) m = Mat3::Zero();
    for (const auto& t : *terms) {
      const double cc = -std::cos(t.k.dot(x) + t.phase);
      for (int l = 0; l < 3; ++l)
        for (int k = 0; k < 3; ++k) out[l][k] += cc * t.k[l] * t.k[k] * t.amp;
    }
    return out;
  };
  return c;
}

AnalyticVectorField random_trig_vector(std::uint64_t seed) {
  Philox rng(seed, stream_id("vector.random_trig", 0));
  struct Term {
    Vec3 k;
    double phase;
    Vec3 amp;
  };
  auto terms = std::make_shared<std::vector<Term>>();
  for (int m = 0; m < 3; ++m) {
    Term t;
    for (int j = 0; j < 3; ++j) t.k[j] = static_cast<double>(static_cast<int>(rng.uniform() * 5.0) - 2);
    t.phase = kTwoPi * rng.uniform();
    for (int j = 0; j < 3; ++j) t.amp[j] = 0.5 * rng.gaussian();
    terms->push_back(t);
  }
  AnalyticVectorField v;
  v.value = [terms](const Vec3& x) {
    Vec3 out = Vec3::Zero();
    for (const auto& t : *terms) out += std::cos(t.k.dot(x) + t.phase) * t.amp;
    return out;
  };
  v.jacobian = [terms](const Vec3& x) {
    Mat3 out = Mat3::Zero();  // out(k,i) = d_i v^k
    for (const auto& t : *terms) {
      const double s = -std::sin(t.k.dot(x) + t.phase);
      for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i) out(k, i) += s * t.k[i] * t.amp[k];
    }
    return out;
  };
  return v;
}

}  // namespace nsgeo
