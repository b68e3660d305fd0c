#include "nsgeo/flow.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "nsgeo/fft3.hpp"
#include "nsgeo/parallel.hpp"

namespace nsgeo {

namespace {

template <typename F>
void for_each_mode(const Grid& g, F&& f) {
  std::size_t idx = 0;
  for (int iz = 0; iz < g.n; ++iz) {
    const int kz = g.wavenumber(iz);
    for (int iy = 0; iy < g.n; ++iy) {
      const int ky = g.wavenumber(iy);
      for (int ix = 0; ix < g.n; ++ix, ++idx) f(idx, g.wavenumber(ix), ky, kz);
    }
  }
}

// nine physical derivative arrays d[i][j] = d_i u_j, batched over both threads
std::array<std::array<std::vector<double>, 3>, 3> jacobian_physical(const SpectralVectorField& u) {
  const GridTables& t = grid_tables(u.grid());
  const std::size_t total = u.grid().size();
  const int n = u.grid().n;
  std::array<std::array<std::vector<double>, 3>, 3> d;
  par2(9, [&](long job) {
    const int i = static_cast<int>(job / 3);
    const int j = static_cast<int>(job % 3);
    const double* k = i == 0 ? t.kx.data() : (i == 1 ? t.ky.data() : t.kz.data());
    const Complex* src = u.component(j).data();
    std::vector<Complex> buf(total);
    for (std::size_t idx = 0; idx < total; ++idx)
      buf[idx] = Complex{-k[idx] * src[idx].imag(), k[idx] * src[idx].real()};
    fft3::inverse(buf.data(), n);
    d[i][j].resize(total);
    for (std::size_t idx = 0; idx < total; ++idx) d[i][j][idx] = buf[idx].real();
  });
  return d;
}

// per-thread transform scratch; the helper thread is persistent so these
// buffers are allocated once and reused
std::vector<Complex>& tls_cbuf(std::size_t n) {
  thread_local std::vector<Complex> b;
  if (b.size() != n) b.resize(n);
  return b;
}

// physical samples of u and xi plus all nine derivatives of each, batched
struct PhysicalBundle {
  std::array<std::vector<double>, 3> u, xi;
  std::array<std::array<std::vector<double>, 3>, 3> du, dxi;
};

const PhysicalBundle& physical_bundle(const SpectralVectorField& u, const SpectralVectorField& xi) {
  const GridTables& t = grid_tables(u.grid());
  const std::size_t total = u.grid().size();
  const int n = u.grid().n;
  thread_local PhysicalBundle bundle_storage;
  PhysicalBundle& b = bundle_storage;  // lambdas capture this reference, not the thread-local
  for (int j = 0; j < 3; ++j) {
    if (b.u[j].size() != total) b.u[j].resize(total);
    if (b.xi[j].size() != total) b.xi[j].resize(total);
    for (int i = 0; i < 3; ++i) {
      if (b.du[i][j].size() != total) b.du[i][j].resize(total);
      if (b.dxi[i][j].size() != total) b.dxi[i][j].resize(total);
    }
  }
  // 24 independent transforms: jobs 0..8 du, 9..17 dxi, 18..20 u, 21..23 xi
  par2(24, [&](long job) {
    std::vector<Complex>& buf = tls_cbuf(total);
    if (job < 18) {
      const bool second = job >= 9;
      const long local = second ? job - 9 : job;
      const int i = static_cast<int>(local / 3);
      const int j = static_cast<int>(local % 3);
      const double* k = i == 0 ? t.kx.data() : (i == 1 ? t.ky.data() : t.kz.data());
      const Complex* src = (second ? xi : u).component(j).data();
      for (std::size_t idx = 0; idx < total; ++idx)
        buf[idx] = Complex{-k[idx] * src[idx].imag(), k[idx] * src[idx].real()};
      fft3::inverse(buf.data(), n);
      auto& dst = second ? b.dxi[i][j] : b.du[i][j];
      for (std::size_t idx = 0; idx < total; ++idx) dst[idx] = buf[idx].real();
    } else {
      const bool second = job >= 21;
      const int j = static_cast<int>(job - (second ? 21 : 18));
      const auto& comp = (second ? xi : u).component(j);
      std::copy(comp.begin(), comp.end(), buf.begin());
      fft3::inverse(buf.data(), n);
      auto& dst = second ? b.xi[j] : b.u[j];
      for (std::size_t idx = 0; idx < total; ++idx) dst[idx] = buf[idx].real();
    }
  });
  return b;
}

void dealias_inplace(SpectralVectorField& f) {
  const GridTables& t = grid_tables(f.grid());
  for (int j = 0; j < 3; ++j) {
    Complex* c = f.component(j).data();
    for (std::size_t idx = 0; idx < t.keep.size(); ++idx)
      if (!t.keep[idx]) c[idx] = Complex{0.0, 0.0};
  }
}

// (u . grad) u, pseudo-spectral with 2/3 dealiasing
SpectralVectorField convective_term(const SpectralVectorField& u) {
  const Grid& g = u.grid();
  const auto up = u.to_physical();
  const auto du = jacobian_physical(u);
  std::array<std::vector<double>, 3> conv;
  for (int j = 0; j < 3; ++j) {
    conv[j].resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      conv[j][i] = up[0][i] * du[0][j][i] + up[1][i] * du[1][j][i] + up[2][i] * du[2][j][i];
  }
  return dealias(SpectralVectorField::from_physical(g, conv));
}

// nonlinear (non-stiff) parts of the joint system
struct NonlinearPair {
  SpectralVectorField fu;
  SpectralVectorField fxi;
};

NonlinearPair nonlinear_pair(const SpectralVectorField& u, const SpectralVectorField& xi) {
  const Grid& g = u.grid();
  const PhysicalBundle& b = physical_bundle(u, xi);
  const auto& up = b.u;
  const auto& du = b.du;
  const auto& xip = b.xi;
  const auto& dxi = b.dxi;

  thread_local std::array<std::vector<double>, 3> conv_storage, rhs_storage;
  std::array<std::vector<double>, 3>& conv_u = conv_storage;
  std::array<std::vector<double>, 3>& rhs_xi = rhs_storage;
  for (int j = 0; j < 3; ++j) {
    if (conv_u[j].size() != g.size()) conv_u[j].resize(g.size());
    if (rhs_xi[j].size() != g.size()) rhs_xi[j].resize(g.size());
  }
  const std::size_t total = g.size();
  par2(2, [&](long half) {
    const std::size_t lo = half == 0 ? 0 : total / 2;
    const std::size_t hi = half == 0 ? total / 2 : total;
    for (std::size_t i = lo; i < hi; ++i) {
      const double s11 = du[0][0][i], s22 = du[1][1][i], s33 = du[2][2][i];
      const double s12 = 0.5 * (du[0][1][i] + du[1][0][i]);
      const double s13 = 0.5 * (du[0][2][i] + du[2][0][i]);
      const double s23 = 0.5 * (du[1][2][i] + du[2][1][i]);
      const double x0 = xip[0][i], x1 = xip[1][i], x2 = xip[2][i];
      for (int j = 0; j < 3; ++j)
        conv_u[j][i] = up[0][i] * du[0][j][i] + up[1][i] * du[1][j][i] + up[2][i] * du[2][j][i];
      const double adv0 = up[0][i] * dxi[0][0][i] + up[1][i] * dxi[1][0][i] + up[2][i] * dxi[2][0][i];
      const double adv1 = up[0][i] * dxi[0][1][i] + up[1][i] * dxi[1][1][i] + up[2][i] * dxi[2][1][i];
      const double adv2 = up[0][i] * dxi[0][2][i] + up[1][i] * dxi[1][2][i] + up[2][i] * dxi[2][2][i];
      rhs_xi[0][i] = -adv0 + s11 * x0 + s12 * x1 + s13 * x2;
      rhs_xi[1][i] = -adv1 + s12 * x0 + s22 * x1 + s23 * x2;
      rhs_xi[2][i] = -adv2 + s13 * x0 + s23 * x1 + s33 * x2;
    }
  });
  NonlinearPair out{SpectralVectorField(g), SpectralVectorField(g)};
  const GridTables& tb = grid_tables(g);
  const double inv_total = 1.0 / static_cast<double>(total);
  par2(6, [&](long job) {
    const bool second = job >= 3;
    const int j = static_cast<int>(job - (second ? 3 : 0));
    auto& dst = (second ? out.fxi : out.fu).component(j);
    const auto& src = second ? rhs_xi[j] : conv_u[j];
    for (std::size_t i = 0; i < total; ++i) dst[i] = Complex{src[i], 0.0};
    fft3::forward_unscaled(dst.data(), g.n);
    // fused normalization + dealias
    for (std::size_t i = 0; i < total; ++i) dst[i] = tb.keep[i] ? inv_total * dst[i] : Complex{0.0, 0.0};
  });
  out.fu = -1.0 * leray_project(out.fu);
  zero_mean_mode(out.fu);
  zero_mean_mode(out.fxi);
  return out;
}

void check_finite(const SpectralVectorField& f, double time) {
  for (int j = 0; j < 3; ++j)
    for (const Complex& c : f.component(j))
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::runtime_error("flow: non-finite state at t=" + std::to_string(time));
}

// per-mode integrating factor exp(-mult(|k|^2) dt)
SpectralVectorField scale_modes(const SpectralVectorField& f, const std::vector<double>& factor) {
  SpectralVectorField out = f;
  for (int j = 0; j < 3; ++j) {
    auto& c = out.component(j);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] *= factor[i];
  }
  return out;
}

// integrating factors reused across steps for fixed parameters
const std::vector<double>& exp_factor(const Grid& g, double nu, double dt, bool mollified, double eps) {
  using Key = std::tuple<int, double, double, bool, double>;
  static std::map<Key, std::vector<double>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  const Key key{g.n, nu, dt, mollified, eps};
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<double> f(g.size());
    const GridTables& t = grid_tables(g);
    for (std::size_t idx = 0; idx < f.size(); ++idx) {
      const double k2 = t.k2[idx];
      const double lam = mollified ? nu * k2 * std::exp(-eps * k2) : nu * k2;
      f[idx] = std::exp(-lam * dt);
    }
    it = cache.emplace(key, std::move(f)).first;
  }
  return it->second;
}

}  // namespace

void FluidParams::validate() const {
  if (!(nu > 0.0)) throw std::invalid_argument("FluidParams: nu must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("FluidParams: dt must be positive");
  if (t_end < 0.0) throw std::invalid_argument("FluidParams: t_end must be nonnegative");
  if (scheme == Scheme::mollified && !(epsilon > 0.0))
    throw std::invalid_argument("FluidParams: epsilon must be positive for the mollified scheme");
}

SpectralScalarField FlowState::pressure() const { return recover_pressure(u); }

FlowState FlowState::from_velocity(const SpectralVectorField& u0, double t0) {
  FlowState s;
  s.time = t0;
  s.u = leray_project(u0);
  zero_mean_mode(s.u);
  s.xi = curl(s.u);
  return s;
}

SpectralVectorField ns_rhs(const SpectralVectorField& u, double nu) {
  require_divergence_free(u, "ns_rhs");
  SpectralVectorField rhs = convective_term(u);
  rhs = -1.0 * leray_project(rhs);
  const GridTables& t = grid_tables(u.grid());
  for (int j = 0; j < 3; ++j)
    for (std::size_t idx = 0; idx < t.k2.size(); ++idx) rhs.at(j, idx) -= nu * t.k2[idx] * u.at(j, idx);
  zero_mean_mode(rhs);
  return rhs;
}

SpectralVectorField vorticity_rhs(const SpectralVectorField& xi, const SpectralVectorField& u, double nu) {
  if (!(xi.grid() == u.grid())) throw std::invalid_argument("vorticity_rhs: grid mismatch");
  NonlinearPair nl = nonlinear_pair(u, xi);
  SpectralVectorField rhs = nl.fxi;
  const GridTables& t = grid_tables(u.grid());
  for (int j = 0; j < 3; ++j)
    for (std::size_t idx = 0; idx < t.k2.size(); ++idx) rhs.at(j, idx) -= nu * t.k2[idx] * xi.at(j, idx);
  return rhs;
}

SpectralVectorField mollified_rhs(const SpectralVectorField& u, const FluidParams& p) {
  require_divergence_free(u, "mollified_rhs");
  const double half_eps = 0.5 * p.epsilon;
  const SpectralVectorField w = heat_multiplier(u, half_eps);
  SpectralVectorField rhs = heat_multiplier(leray_project(convective_term(w)), half_eps);
  rhs = -1.0 * rhs;
  // viscous part: -nu T_e curlcurl T_e u = -nu |k|^2 exp(-eps |k|^2) u_hat
  const GridTables& t = grid_tables(u.grid());
  for (int j = 0; j < 3; ++j)
    for (std::size_t idx = 0; idx < t.k2.size(); ++idx)
      rhs.at(j, idx) -= p.nu * t.k2[idx] * std::exp(-p.epsilon * t.k2[idx]) * u.at(j, idx);
  zero_mean_mode(rhs);
  return rhs;
}

FlowState step(const FlowState& state, const FluidParams& p) {
  const Grid& g = state.u.grid();
  const bool moll = p.scheme == Scheme::mollified;
  const auto& Eh = exp_factor(g, p.nu, 0.5 * p.dt, moll, p.epsilon);
  const auto& Ef = exp_factor(g, p.nu, p.dt, moll, p.epsilon);
  const double h = p.dt;

  check_finite(state.u, state.time);

  if (moll) {
    // u' = L_e u + N_e(u) with both factors mollified; same IF-RK4 skeleton
    auto N = [&](const SpectralVectorField& u) {
      const SpectralVectorField w = heat_multiplier(u, 0.5 * p.epsilon);
      SpectralVectorField out = heat_multiplier(leray_project(convective_term(w)), 0.5 * p.epsilon);
      out = -1.0 * out;
      zero_mean_mode(out);
      return out;
    };
    const SpectralVectorField n1 = N(state.u);
    SpectralVectorField u2 = scale_modes(state.u, Eh);
    SpectralVectorField tmp = scale_modes(n1, Eh);
    axpy(u2, 0.5 * h, tmp);
    const SpectralVectorField n2 = N(u2);
    SpectralVectorField u3 = scale_modes(state.u, Eh);
    axpy(u3, 0.5 * h, n2);
    const SpectralVectorField n3 = N(u3);
    SpectralVectorField u4 = scale_modes(state.u, Ef);
    SpectralVectorField en3 = scale_modes(n3, Eh);
    axpy(u4, h, en3);
    const SpectralVectorField n4 = N(u4);

    SpectralVectorField unew = scale_modes(state.u, Ef);
    SpectralVectorField acc = scale_modes(n1, Ef);
    axpy(unew, h / 6.0, acc);
    acc = scale_modes(n2, Eh);
    axpy(unew, h / 3.0, acc);
    acc = scale_modes(n3, Eh);
    axpy(unew, h / 3.0, acc);
    axpy(unew, h / 6.0, n4);

    FlowState out;
    out.time = state.time + h;
    out.u = leray_project(unew);
    zero_mean_mode(out.u);
    out.xi = curl(out.u);
    check_finite(out.u, out.time);
    return out;
  }

  // joint (u, xi) IF-RK4 with fused stage updates over both components
  auto N = [&](const SpectralVectorField& u, const SpectralVectorField& xi) { return nonlinear_pair(u, xi); };
  const std::size_t total = g.size();

  // dst = A.*(a + c1 b) pointwise, over all six coefficient arrays
  auto fused2 = [&](SpectralVectorField& du, SpectralVectorField& dx, const std::vector<double>& A,
                    const FlowState& base, const NonlinearPair& K, double c1) {
    par2(6, [&](long job) {
      const int j = static_cast<int>(job % 3);
      const Complex* a = (job < 3 ? base.u : base.xi).component(j).data();
      const Complex* b = (job < 3 ? K.fu : K.fxi).component(j).data();
      Complex* dst = (job < 3 ? du : dx).component(j).data();
      for (std::size_t i = 0; i < total; ++i) dst[i] = A[i] * (a[i] + c1 * b[i]);
    });
  };

  const NonlinearPair k1 = N(state.u, state.xi);
  SpectralVectorField u2(g), x2(g);
  fused2(u2, x2, Eh, state, k1, 0.5 * h);  // Eh (u + h/2 k1)
  const NonlinearPair k2 = N(u2, x2);

  SpectralVectorField u3(g), x3(g);
  par2(6, [&](long job) {
    const int j = static_cast<int>(job % 3);
    const Complex* a = (job < 3 ? state.u : state.xi).component(j).data();
    const Complex* b = (job < 3 ? k2.fu : k2.fxi).component(j).data();
    Complex* dst = (job < 3 ? u3 : x3).component(j).data();
    for (std::size_t i = 0; i < total; ++i) dst[i] = Eh[i] * a[i] + 0.5 * h * b[i];
  });
  const NonlinearPair k3 = N(u3, x3);

  SpectralVectorField u4(g), x4(g);
  par2(6, [&](long job) {
    const int j = static_cast<int>(job % 3);
    const Complex* a = (job < 3 ? state.u : state.xi).component(j).data();
    const Complex* b = (job < 3 ? k3.fu : k3.fxi).component(j).data();
    Complex* dst = (job < 3 ? u4 : x4).component(j).data();
    for (std::size_t i = 0; i < total; ++i) dst[i] = Ef[i] * a[i] + h * Eh[i] * b[i];
  });
  const NonlinearPair k4 = N(u4, x4);

  FlowState out;
  out.time = state.time + h;
  out.u = SpectralVectorField(g);
  out.xi = SpectralVectorField(g);
  par2(6, [&](long job) {
    const int j = static_cast<int>(job % 3);
    const bool xi_part = job >= 3;
    const Complex* a = (xi_part ? state.xi : state.u).component(j).data();
    const Complex* b1 = (xi_part ? k1.fxi : k1.fu).component(j).data();
    const Complex* b2 = (xi_part ? k2.fxi : k2.fu).component(j).data();
    const Complex* b3 = (xi_part ? k3.fxi : k3.fu).component(j).data();
    const Complex* b4 = (xi_part ? k4.fxi : k4.fu).component(j).data();
    Complex* dst = (xi_part ? out.xi : out.u).component(j).data();
    for (std::size_t i = 0; i < total; ++i)
      dst[i] = Ef[i] * (a[i] + (h / 6.0) * b1[i]) + Eh[i] * (h / 3.0) * (b2[i] + b3[i]) + (h / 6.0) * b4[i];
  });
  out.u = leray_project(out.u);
  zero_mean_mode(out.u);
  check_finite(out.u, out.time);
  check_finite(out.xi, out.time);
  return out;
}

SpectralScalarField recover_pressure(const SpectralVectorField& u) {
  const SpectralVectorField conv = convective_term(u);
  SpectralScalarField p(u.grid());
  for_each_mode(u.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
    if (k2 == 0.0) return;
    const Complex kdot = double(kx) * conv.at(0, idx) + double(ky) * conv.at(1, idx) + double(kz) * conv.at(2, idx);
    p.at(idx) = Complex{0.0, 1.0} * kdot / k2;
  });
  return p;
}

void run(FlowState state, const FluidParams& p, int diag_every,
         const std::function<void(const RunSample&)>& on_sample) {
  p.validate();
  if (diag_every < 1) throw std::invalid_argument("run: diag_every must be >= 1");
  const long nsteps = std::lround(p.t_end / p.dt);
  on_sample({state, 0});
  for (long s = 1; s <= nsteps; ++s) {
    state = step(state, p);
    if (s % diag_every == 0 || s == nsteps) on_sample({state, s});
  }
}

}  // namespace nsgeo
