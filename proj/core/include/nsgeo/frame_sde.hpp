#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "nsgeo/connection.hpp"
#include "nsgeo/metric.hpp"

namespace nsgeo {

struct McConfig {
  long paths = 10000;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  double nu = 0.1;
  int threads = 0;  // 0 = use hardware concurrency

  void validate() const;
};

/// State of one frame-bundle path: position (kept unwrapped; charts are
/// 2pi-periodic so wrapping happens at evaluation), frame matrix with
/// g-orthonormal columns, and the degree-1/degree-2 resolvent matrices.
struct FrameState {
  Vec3 x = Vec3::Zero();
  Mat3 r = Mat3::Identity();
  Mat3 q1 = Mat3::Identity();
  Mat3 q2 = Mat3::Identity();  // ordered-pair basis (12,13,23)
  double time = 0.0;
};

/// Time-dependent drift with its strain, either analytic closures or
/// snapshot-interpolated fields.
struct DriftField {
  enum class Source { analytic, snapshot };
  std::function<Vec3(double, const Vec3&)> velocity;
  std::function<Mat3(double, const Vec3&)> strain;  // symmetric coordinate components
  Source source = Source::analytic;
};

Vec3 wrap_point(const Vec3& x);

/// One Stratonovich Euler-Heun step of
///   dx = sqrt(2 nu) r o dW - u dt,   de_a = -Gamma^0(o dx) e_a,
/// followed by metric Gram-Schmidt re-orthonormalization. dW must be
/// N(0, dt Id), supplied by the caller. Pass drift = nullptr for pure frame
/// Brownian motion; `sigma_override` >= 0 replaces sqrt(2 nu) (the driftless
/// heat flow uses sigma = 1).
FrameState step_frame_sde(const FrameState& state, const MetricChart& chart, const DriftField* drift,
                          const Vec3& dW, double nu, double dt, double sigma_override = -1.0,
                          bool reorthonormalize = true);

/// Transport update q1 <- q1 (I + h J + h^2 J^2 / 2) with J = K - nu ric in
/// frame components; q2 advances with the degree-2 action (the wedge lift of
/// K minus nu times the star-conjugated ric, which is the 2-form Weitzenboeck
/// action in dimension 3 and vanishes on the flat chart). Callers that never
/// read q2 may switch its update off.
void step_resolvent(FrameState& state, const Mat3& strain_at_x, const Mat3& ric_at_x, double nu, double dt,
                    bool update_q2 = true);

/// Heat-flow resolvent step dQ/dt = -(1/2) R_p Q (left action), p = 1, 2.
void step_heat_resolvent(FrameState& state, const Mat3& ric1, const Mat3& ric2, double dt);

/// ||r^T g r - Id||_inf, the frame orthonormality defect.
double frame_defect(const MetricChart& chart, const FrameState& state);

// ---- wedge algebra in the ordered-pair basis ---------------------------------

Vec3 wedge_pair(const Vec3& a, const Vec3& b);        // components (12,13,23)
Mat3 pair_as_matrix(const Vec3& pair);                // antisymmetric matrix
Mat3 lambda2_lift(const Mat3& m);                     // a^b -> Ma^b + a^Mb
Mat3 star_conjugate(const Mat3& a);                   // S a S with the 3-D star map

// ---- deterministic Monte Carlo reduction --------------------------------------

struct McEstimate {
  Vec3 mean = Vec3::Zero();
  Vec3 stderr_c = Vec3::Zero();  // componentwise standard error of the mean
  long paths = 0;
  long exploded = 0;
};

/// Runs `paths` independent samples of fn(path_index) in parallel and reduces
/// with a fixed pairwise tree, so the result is bit-identical for any thread
/// count. fn returns nullopt for an exploded path; more than 0.1% explosions
/// aborts.
McEstimate run_mc(long paths, int threads, const std::function<std::optional<Vec3>(long)>& fn);

}  // namespace nsgeo
