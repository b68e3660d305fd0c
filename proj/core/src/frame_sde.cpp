#include "nsgeo/frame_sde.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "nsgeo/grid.hpp"

namespace nsgeo {

void McConfig::validate() const {
  if (paths < 1) throw std::invalid_argument("McConfig: paths must be >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("McConfig: dt must be positive");
  if (!(nu > 0.0)) throw std::invalid_argument("McConfig: nu must be positive");
}

Vec3 wrap_point(const Vec3& x) {
  Vec3 out;
  for (int j = 0; j < 3; ++j) {
    double v = std::fmod(x[j], kTwoPi);
    if (v < 0.0) v += kTwoPi;
    out[j] = v;
  }
  return out;
}

namespace {

// de_a^k = -Gamma^k_ij dx^i e_a^j for all columns at once
Mat3 transport_increment(const Christoffel& G, const Vec3& dx, const Mat3& frame) {
  Mat3 out;
  for (int k = 0; k < 3; ++k) {
    // row k of the increment: -(dx^T G[k] frame)
    out.row(k) = -(dx.transpose() * G[k] * frame);
  }
  return out;
}

Mat3 gram_schmidt_metric(const Mat3& frame, const Mat3& g) {
  Mat3 out = frame;
  for (int a = 0; a < 3; ++a) {
    Vec3 col = out.col(a);
    for (int b = 0; b < a; ++b) {
      const Vec3 prev = out.col(b);
      col -= (col.dot(g * prev)) * prev;
    }
    const double norm = std::sqrt(col.dot(g * col));
    out.col(a) = col / norm;
  }
  return out;
}

}  // namespace

FrameState step_frame_sde(const FrameState& state, const MetricChart& chart, const DriftField* drift,
                          const Vec3& dW, double nu, double dt, double sigma_override, bool reorthonormalize) {
  const double sigma = sigma_override >= 0.0 ? sigma_override : std::sqrt(2.0 * nu);

  if (chart.flat) {
    // no transport and no re-orthonormalization needed: the frame is exact
    FrameState out = state;
    if (drift) {
      const Vec3 b0 = -drift->velocity(state.time, wrap_point(state.x));
      const Vec3 x_pred = state.x + sigma * (state.r * dW) + b0 * dt;
      const Vec3 b1 = -drift->velocity(state.time + dt, wrap_point(x_pred));
      out.x = state.x + sigma * (state.r * dW) + 0.5 * dt * (b0 + b1);
    } else {
      out.x = state.x + sigma * (state.r * dW);
    }
    out.time = state.time + dt;
    if (!out.x.allFinite()) throw std::runtime_error("step_frame_sde: non-finite state");
    return out;
  }

  const Vec3 xw = wrap_point(state.x);
  const Vec3 b0 = drift ? Vec3(-drift->velocity(state.time, xw)) : Vec3::Zero();
  const Christoffel G0 = christoffel_lc(chart, xw);

  // predictor
  const Vec3 dx_pred = sigma * (state.r * dW) + b0 * dt;
  const Mat3 r_pred = state.r + transport_increment(G0, dx_pred, state.r);
  const Vec3 x_pred = state.x + dx_pred;

  // corrector with the same Brownian increment; frame transported with the
  // midpoint Christoffels acting on the averaged frame (Stratonovich midpoint)
  const Vec3 xw_pred = wrap_point(x_pred);
  const Vec3 b1 = drift ? Vec3(-drift->velocity(state.time + dt, xw_pred)) : Vec3::Zero();
  const Vec3 dx = sigma * (0.5 * (state.r + r_pred) * dW) + 0.5 * (b0 + b1) * dt;
  const Christoffel Gm = christoffel_lc(chart, wrap_point(state.x + 0.5 * dx));

  FrameState out = state;
  out.x = state.x + dx;
  out.r = state.r + transport_increment(Gm, dx, Mat3(0.5 * (state.r + r_pred)));
  if (reorthonormalize) out.r = gram_schmidt_metric(out.r, chart.metric(wrap_point(out.x)));
  out.time = state.time + dt;
  if (!out.x.allFinite() || !out.r.allFinite())
    throw std::runtime_error("step_frame_sde: non-finite state");
  return out;
}

void step_resolvent(FrameState& state, const Mat3& strain_at_x, const Mat3& ric_at_x, double nu, double dt,
                    bool update_q2) {
  const Mat3 j1 = strain_at_x - nu * ric_at_x;
  state.q1 = state.q1 * (Mat3::Identity() + dt * j1 + 0.5 * dt * dt * j1 * j1);
  if (update_q2) {
    const Mat3 j2 = lambda2_lift(strain_at_x) - nu * star_conjugate(ric_at_x);
    state.q2 = state.q2 * (Mat3::Identity() + dt * j2 + 0.5 * dt * dt * j2 * j2);
  }
}

void step_heat_resolvent(FrameState& state, const Mat3& ric1, const Mat3& ric2, double dt) {
  const Mat3 a1 = -0.5 * ric1;
  const Mat3 a2 = -0.5 * ric2;
  state.q1 = (Mat3::Identity() + dt * a1 + 0.5 * dt * dt * a1 * a1) * state.q1;
  state.q2 = (Mat3::Identity() + dt * a2 + 0.5 * dt * dt * a2 * a2) * state.q2;
}

double frame_defect(const MetricChart& chart, const FrameState& state) {
  const Mat3 g = chart.metric(wrap_point(state.x));
  return (state.r.transpose() * g * state.r - Mat3::Identity()).cwiseAbs().maxCoeff();
}

Vec3 wedge_pair(const Vec3& a, const Vec3& b) {
  return Vec3(a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0], a[1] * b[2] - a[2] * b[1]);
}

Mat3 pair_as_matrix(const Vec3& p) {
  Mat3 m = Mat3::Zero();
  m(0, 1) = p[0];
  m(1, 0) = -p[0];
  m(0, 2) = p[1];
  m(2, 0) = -p[1];
  m(1, 2) = p[2];
  m(2, 1) = -p[2];
  return m;
}

Mat3 lambda2_lift(const Mat3& m) {
  static const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  Mat3 out;
  for (int c = 0; c < 3; ++c) {
    const int i = pairs[c][0], j = pairs[c][1];
    const Vec3 ei = Vec3::Unit(i), ej = Vec3::Unit(j);
    out.col(c) = wedge_pair(m.col(i), ej) + wedge_pair(ei, m.col(j));
  }
  return out;
}

Mat3 star_conjugate(const Mat3& a) {
  Mat3 s = Mat3::Zero();
  s(0, 2) = 1.0;
  s(1, 1) = -1.0;
  s(2, 0) = 1.0;
  return s * a * s;
}

McEstimate run_mc(long paths, int threads, const std::function<std::optional<Vec3>(long)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  std::vector<Vec3> payload(static_cast<std::size_t>(paths), Vec3::Zero());
  std::vector<char> ok(static_cast<std::size_t>(paths), 0);

  auto worker = [&](long lo, long hi) {
    for (long p = lo; p < hi; ++p) {
      const auto v = fn(p);
      if (v && v->allFinite()) {
        payload[static_cast<std::size_t>(p)] = *v;
        ok[static_cast<std::size_t>(p)] = 1;
      }
    }
  };
  if (threads == 1 || paths < 64) {
    worker(0, paths);
  } else {
    std::vector<std::thread> pool;
    const long chunk = (paths + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const long lo = t * chunk;
      const long hi = std::min(paths, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  long exploded = 0;
  for (char c : ok)
    if (!c) ++exploded;
  if (exploded * 1000 > paths)
    throw std::runtime_error("run_mc: more than 0.1% of paths exploded");

  // pairwise tree reduction over the fixed path order
  const std::function<Vec3(long, long)> reduce = [&](long lo, long hi) -> Vec3 {
    if (hi - lo == 1) return ok[static_cast<std::size_t>(lo)] ? payload[static_cast<std::size_t>(lo)] : Vec3::Zero();
    const long mid = lo + (hi - lo) / 2;
    return reduce(lo, mid) + reduce(mid, hi);
  };
  const long good = paths - exploded;
  McEstimate est;
  est.paths = paths;
  est.exploded = exploded;
  if (good == 0) return est;
  est.mean = reduce(0, paths) / static_cast<double>(good);

  const std::function<Vec3(long, long)> reduce_sq = [&](long lo, long hi) -> Vec3 {
    if (hi - lo == 1) {
      if (!ok[static_cast<std::size_t>(lo)]) return Vec3::Zero();
      const Vec3 d = payload[static_cast<std::size_t>(lo)] - est.mean;
      return d.cwiseProduct(d);
    }
    const long mid = lo + (hi - lo) / 2;
    return reduce_sq(lo, mid) + reduce_sq(mid, hi);
  };
  if (good > 1) {
    const Vec3 var = reduce_sq(0, paths) / static_cast<double>(good - 1);
    est.stderr_c = (var / static_cast<double>(good)).cwiseSqrt();
  }
  return est;
}

}  // namespace nsgeo
