#include "nsgeo/feynman_kac.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "nsgeo/rng.hpp"

namespace nsgeo {

McEstimate feynman_kac_vorticity(const Vec3& probe, double t, const DriftField& drift,
                                 const CovectorField& omega0, const MetricChart& chart, const McConfig& cfg) {
  cfg.validate();
  if (t < 0.0) throw std::invalid_argument("feynman_kac_vorticity: t must be nonnegative");
  const Mat3 r0 = chart.frame(wrap_point(probe));
  if (t == 0.0) {
    McEstimate est;
    est.mean = omega0(wrap_point(probe));
    est.paths = cfg.paths;
    return est;
  }
  const long steps = std::max<long>(1, std::lround(t / cfg.dt));
  const double h = t / static_cast<double>(steps);
  const double sqrt_h = std::sqrt(h);
  const bool flat = chart.flat;
  const Mat3 r0_invT = r0.inverse().transpose();

  // backward drift: the path clock s runs 0..t while the field is read at t - s
  DriftField reversed;
  reversed.source = drift.source;
  if (drift.velocity)
    reversed.velocity = [&drift, t](double s, const Vec3& x) { return drift.velocity(t - s, x); };
  if (drift.strain)
    reversed.strain = [&drift, t](double s, const Vec3& x) { return drift.strain(t - s, x); };
  const DriftField* rev = drift.velocity ? &reversed : nullptr;
  const bool has_strain = rev && rev->strain;
  const bool evolve_q = has_strain || !flat;  // otherwise q1 stays the identity

  auto one_path = [&](long p) -> std::optional<Vec3> {
    Philox rng(cfg.seed, stream_id("feynman_kac", static_cast<std::uint64_t>(p)));
    FrameState st;
    st.x = probe;
    st.r = r0;
    for (long j = 0; j < steps; ++j) {
      const Vec3 dW(sqrt_h * rng.gaussian(), sqrt_h * rng.gaussian(), sqrt_h * rng.gaussian());
      if (!evolve_q) {
        st = step_frame_sde(st, chart, rev, dW, cfg.nu, h);
        if (!st.x.allFinite()) return std::nullopt;
        continue;
      }
      // resolvent coefficients sampled at the step midpoint (pre/post average);
      // on the flat chart the frame is the identity, so K is the raw strain
      Mat3 k_pre = Mat3::Zero(), ric_pre = Mat3::Zero();
      if (has_strain)
        k_pre = flat ? rev->strain(st.time, wrap_point(st.x))
                     : Mat3(st.r.transpose() * rev->strain(st.time, wrap_point(st.x)) * st.r);
      if (!flat) ric_pre = st.r.inverse() * ricci_lc(chart, wrap_point(st.x)) * st.r;
      FrameState next = step_frame_sde(st, chart, rev, dW, cfg.nu, h);
      Mat3 k_post = Mat3::Zero(), ric_post = Mat3::Zero();
      if (has_strain)
        k_post = flat ? rev->strain(next.time, wrap_point(next.x))
                      : Mat3(next.r.transpose() * rev->strain(next.time, wrap_point(next.x)) * next.r);
      if (!flat) ric_post = next.r.inverse() * ricci_lc(chart, wrap_point(next.x)) * next.r;
      next.q1 = st.q1;
      next.q2 = st.q2;
      step_resolvent(next, 0.5 * (k_pre + k_post), 0.5 * (ric_pre + ric_post), cfg.nu, h, /*update_q2=*/false);
      st = next;
      if (!st.x.allFinite() || !st.q1.allFinite()) return std::nullopt;
    }
    const Vec3 f = st.r.transpose() * omega0(wrap_point(st.x));
    return Vec3(r0_invT * (st.q1 * f));
  };

  return run_mc(cfg.paths, cfg.threads, one_path);
}

HeatFormEstimate heat_semigroup_form(const CovectorField& phi, double t, const MetricChart& chart,
                                     const Vec3& x0, const Vec3& v0, const McConfig& cfg) {
  cfg.validate();
  if (!(t > 0.0)) throw std::invalid_argument("heat_semigroup_form: t must be positive");
  const Mat3 r0 = chart.frame(wrap_point(x0));
  const Vec3 v0_hat = r0.inverse() * v0;
  const long steps = std::max<long>(1, std::lround(t / cfg.dt));
  const double h = t / static_cast<double>(steps);
  const double sqrt_h = std::sqrt(h);
  const bool flat = chart.flat;

  std::vector<double> ric_mins(static_cast<std::size_t>(cfg.paths), 0.0);

  auto one_path = [&](long p) -> std::optional<Vec3> {
    Philox rng(cfg.seed, stream_id("heat_form", static_cast<std::uint64_t>(p)));
    FrameState st;
    st.x = x0;
    st.r = r0;
    double ric_min = 0.0;
    for (long j = 0; j < steps; ++j) {
      const Vec3 dW(sqrt_h * rng.gaussian(), sqrt_h * rng.gaussian(), sqrt_h * rng.gaussian());
      Mat3 ric1 = Mat3::Zero();
      if (!flat) {
        const Mat3 ric_op = ricci_lc(chart, wrap_point(st.x));
        ric1 = st.r.inverse() * ric_op * st.r;
        const Mat3 sym = 0.5 * (ric1 + ric1.transpose());
        const double lam = Eigen::SelfAdjointEigenSolver<Mat3>(sym).eigenvalues().minCoeff();
        ric_min = std::min(ric_min, lam);
      }
      FrameState next = step_frame_sde(st, chart, nullptr, dW, cfg.nu, h, /*sigma=*/1.0);
      next.q1 = st.q1;
      next.q2 = st.q2;
      step_heat_resolvent(next, ric1, star_conjugate(ric1), h);
      st = next;
      if (!st.x.allFinite() || !st.q1.allFinite()) return std::nullopt;
    }
    const Vec3 f = st.r.transpose() * phi(wrap_point(st.x));
    const double val = f.dot(st.q1 * v0_hat);
    ric_mins[static_cast<std::size_t>(p)] = ric_min;
    return Vec3(val, 0.0, 0.0);
  };

  const McEstimate est = run_mc(cfg.paths, cfg.threads, one_path);
  HeatFormEstimate out;
  out.value = est.mean[0];
  out.stderr_v = est.stderr_c[0];
  out.paths = est.paths;
  double m = 0.0;
  for (double v : ric_mins) m = std::min(m, v);
  out.ric_min = m;
  return out;
}

DriftField snapshot_drift(const std::vector<Snapshot>& snaps) {
  if (snaps.empty()) throw std::invalid_argument("snapshot_drift: no snapshots");
  struct Entry {
    double time;
    Grid grid;
    std::array<std::vector<double>, 3> u;
    StrainField s;
  };
  auto entries = std::make_shared<std::vector<Entry>>();
  for (const auto& snap : snaps) {
    const SpectralVectorField* u = snap.find("u");
    if (!u) throw std::invalid_argument("snapshot_drift: snapshot lacks field 'u'");
    entries->push_back(Entry{snap.time, snap.grid, u->to_physical(), strain(*u)});
  }
  for (std::size_t i = 1; i < entries->size(); ++i)
    if ((*entries)[i].time <= (*entries)[i - 1].time)
      throw std::invalid_argument("snapshot_drift: snapshots must be time-ordered");

  auto locate = [entries](double t) -> std::pair<std::size_t, double> {
    const auto& e = *entries;
    if (t <= e.front().time) return {0, 0.0};
    if (t >= e.back().time) return {e.size() - 2, 1.0};
    std::size_t lo = 0;
    while (lo + 1 < e.size() && e[lo + 1].time <= t) ++lo;
    if (lo + 1 >= e.size()) return {e.size() - 2, 1.0};
    const double w = (t - e[lo].time) / (e[lo + 1].time - e[lo].time);
    return {lo, w};
  };

  auto trilinear = [](const Grid& g, const std::vector<double>& f, const Vec3& xw) {
    const double hx = g.spacing();
    double fx = xw[0] / hx, fy = xw[1] / hx, fz = xw[2] / hx;
    const int ix = static_cast<int>(std::floor(fx)), iy = static_cast<int>(std::floor(fy)),
              iz = static_cast<int>(std::floor(fz));
    const double ax = fx - ix, ay = fy - iy, az = fz - iz;
    double acc = 0.0;
    for (int dz = 0; dz < 2; ++dz)
      for (int dy = 0; dy < 2; ++dy)
        for (int dx = 0; dx < 2; ++dx) {
          const double w = (dx ? ax : 1.0 - ax) * (dy ? ay : 1.0 - ay) * (dz ? az : 1.0 - az);
          acc += w * f[g.index((ix + dx) % g.n, (iy + dy) % g.n, (iz + dz) % g.n)];
        }
    return acc;
  };

  DriftField out;
  out.source = DriftField::Source::snapshot;
  out.velocity = [entries, locate, trilinear](double t, const Vec3& x) {
    const auto [i, w] = locate(t);
    const auto& a = (*entries)[i];
    const auto& b = (*entries)[std::min(i + 1, entries->size() - 1)];
    Vec3 v;
    for (int j = 0; j < 3; ++j)
      v[j] = (1.0 - w) * trilinear(a.grid, a.u[j], x) + w * trilinear(b.grid, b.u[j], x);
    return v;
  };
  out.strain = [entries, locate, trilinear](double t, const Vec3& x) {
    const auto [i, w] = locate(t);
    const auto& a = (*entries)[i];
    const auto& b = (*entries)[std::min(i + 1, entries->size() - 1)];
    Mat3 m;
    for (int r = 0; r < 3; ++r)
      for (int c = r; c < 3; ++c) {
        static constexpr int map[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
        const double v = (1.0 - w) * trilinear(a.grid, a.s.comp[map[r][c]], x) +
                         w * trilinear(b.grid, b.s.comp[map[r][c]], x);
        m(r, c) = v;
        m(c, r) = v;
      }
    return m;
  };
  return out;
}

}  // namespace nsgeo
