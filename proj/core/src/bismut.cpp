#include "nsgeo/bismut.hpp"

#include <cmath>
#include <stdexcept>

#include "nsgeo/rng.hpp"

namespace nsgeo {

BismutEstimate bismut_square_estimator(const CovectorField& phi, const Vec3& v, double t, const Vec3& x0,
                                       const McConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0)) throw std::invalid_argument("bismut_square_estimator: t must be positive");
  long steps = std::max<long>(2, std::lround(t / cfg.dt));
  if (steps % 2 != 0) ++steps;  // the martingale switches integrands at t/2
  const double h = t / static_cast<double>(steps);
  const double sqrt_h = std::sqrt(h);
  const long half = steps / 2;

  std::vector<double> half_proj(static_cast<std::size_t>(cfg.paths), 0.0);

  auto one_path = [&](long p) -> std::optional<Vec3> {
    Philox rng(cfg.seed, stream_id("bismut", static_cast<std::uint64_t>(p)));
    Vec3 x = x0;
    Mat3 q1 = Mat3::Identity();
    Mat3 q2 = Mat3::Identity();
    // first half: I2 = int <Q1 v, dB>, A2 = int (Q2)^{-1} (dB ^ Q1 v)
    double i2 = 0.0;
    Vec3 a2 = Vec3::Zero();
    for (long j = 0; j < half; ++j) {
      const Vec3 dB(sqrt_h * rng.gaussian(), sqrt_h * rng.gaussian(), sqrt_h * rng.gaussian());
      const Vec3 q1v = q1 * v;
      i2 += q1v.dot(dB);
      a2 += q2.inverse() * wedge_pair(dB, q1v);
      x += dB;
    }
    half_proj[static_cast<std::size_t>(p)] = i2;
    // second half: dM_s = sum_k (a_k + b_k) dB^k with
    //   a_k = sum_j <Q2_s A2, e_k ^ e_j> e_j  and  b_k = I2 e_k
    Vec3 m = Vec3::Zero();
    for (long j = 0; j < half; ++j) {
      const Vec3 dB(sqrt_h * rng.gaussian(), sqrt_h * rng.gaussian(), sqrt_h * rng.gaussian());
      const Mat3 w = pair_as_matrix(q2 * a2);
      const Vec3 dm = w.transpose() * dB + i2 * dB;
      m += q1.inverse() * dm;
      x += dB;
    }
    const Vec3 weight = q1 * m;
    const double payload = phi(wrap_point(x)).dot(weight);
    return Vec3(payload, 0.0, 0.0);
  };

  const McEstimate est = run_mc(cfg.paths, cfg.threads, one_path);
  BismutEstimate out;
  const double scale = -4.0 / (t * t);
  out.value = scale * est.mean[0];
  out.stderr_v = std::abs(scale) * est.stderr_c[0];
  out.paths = est.paths;

  // sample variance of the first-half projection integral
  double mean = 0.0;
  for (double s : half_proj) mean += s;
  mean /= static_cast<double>(cfg.paths);
  double var = 0.0;
  for (double s : half_proj) var += (s - mean) * (s - mean);
  out.half_time_proj_var = cfg.paths > 1 ? var / static_cast<double>(cfg.paths - 1) : 0.0;
  return out;
}

NormBoundReport verify_norm_bound(const SpectralVectorField& phi, double t, double kappa1, double kappa2) {
  if (!(t > 0.0)) throw std::invalid_argument("verify_norm_bound: t must be positive");
  const Grid& g = phi.grid();
  double lhs_acc = 0.0, norm_acc = 0.0;
  std::size_t idx = 0;
  for (int iz = 0; iz < g.n; ++iz) {
    const int kz = g.wavenumber(iz);
    for (int iy = 0; iy < g.n; ++iy) {
      const int ky = g.wavenumber(iy);
      for (int ix = 0; ix < g.n; ++ix, ++idx) {
        const int kx = g.wavenumber(ix);
        const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const double mult = k2 * std::exp(-0.5 * t * k2);
        for (int j = 0; j < 3; ++j) {
          const double c2 = std::norm(phi.at(j, idx));
          lhs_acc += mult * mult * c2;
          norm_acc += c2;
        }
      }
    }
  }
  const double vol = kTwoPi * kTwoPi * kTwoPi;
  NormBoundReport rep;
  rep.t = t;
  rep.lhs = std::sqrt(vol * lhs_acc);
  const double k1p = std::max(kappa1, 0.0);
  const double k2p = std::max(kappa2, 0.0);
  const double n = 3.0;
  rep.rhs = (2.0 / t) * std::exp(1.5 * k1p * t) *
            std::sqrt(2.0 * (n - 1.0) * std::exp(1.5 * k2p * t) + 1.0) * std::sqrt(vol * norm_acc);
  rep.ok = rep.lhs <= rep.rhs;
  return rep;
}

}  // namespace nsgeo
