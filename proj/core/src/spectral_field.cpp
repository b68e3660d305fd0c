#include "nsgeo/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <type_traits>
#include <utility>

#include "nsgeo/fft3.hpp"
#include "nsgeo/parallel.hpp"

namespace nsgeo {

namespace {

// Loop over all modes invoking f(idx, kx, ky, kz).
template <typename F>
void for_each_mode(const Grid& g, F&& f) {
  std::size_t idx = 0;
  for (int iz = 0; iz < g.n; ++iz) {
    const int kz = g.wavenumber(iz);
    for (int iy = 0; iy < g.n; ++iy) {
      const int ky = g.wavenumber(iy);
      for (int ix = 0; ix < g.n; ++ix, ++idx) {
        f(idx, g.wavenumber(ix), ky, kz);
      }
    }
  }
}

double max_abs(const SpectralVectorField& u) {
  double m = 0.0;
  for (int j = 0; j < 3; ++j)
    for (const Complex& c : u.component(j)) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace

std::vector<double> SpectralScalarField::to_physical() const {
  std::vector<Complex> buf(c_);
  fft3::inverse(buf.data(), grid_.n);
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

SpectralScalarField SpectralScalarField::from_physical(const Grid& g, const std::vector<double>& values) {
  if (values.size() != g.size()) throw std::invalid_argument("from_physical: size mismatch");
  SpectralScalarField s(g);
  for (std::size_t i = 0; i < values.size(); ++i) s.c_[i] = Complex{values[i], 0.0};
  fft3::forward(s.c_.data(), g.n);
  return s;
}

std::array<std::vector<double>, 3> SpectralVectorField::to_physical() const {
  std::array<std::vector<double>, 3> out;
  par2(3, [&](long j) {
    std::vector<Complex> buf(c_[j]);
    fft3::inverse(buf.data(), grid_.n);
    out[j].resize(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) out[j][i] = buf[i].real();
  });
  return out;
}

SpectralVectorField SpectralVectorField::from_physical(const Grid& g, const std::array<std::vector<double>, 3>& values) {
  for (int j = 0; j < 3; ++j)
    if (values[j].size() != g.size()) throw std::invalid_argument("from_physical: size mismatch");
  SpectralVectorField u(g);
  par2(3, [&](long j) {
    for (std::size_t i = 0; i < values[j].size(); ++i) u.c_[j][i] = Complex{values[j][i], 0.0};
    fft3::forward(u.c_[j].data(), g.n);
  });
  return u;
}

SpectralVectorField fft_roundtrip(const SpectralVectorField& u) {
  return SpectralVectorField::from_physical(u.grid(), u.to_physical());
}

const GridTables& grid_tables(const Grid& g) {
  static std::map<std::pair<int, double>, GridTables> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({g.n, g.dealias_fraction});
  if (it == cache.end()) {
    GridTables t;
    t.kx.resize(g.size());
    t.ky.resize(g.size());
    t.kz.resize(g.size());
    t.k2.resize(g.size());
    t.keep.resize(g.size());
    const double cut = g.dealias_cutoff();
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
      t.kx[idx] = kx;
      t.ky[idx] = ky;
      t.kz[idx] = kz;
      t.k2[idx] = double(kx) * kx + double(ky) * ky + double(kz) * kz;
      t.keep[idx] = (std::abs(kx) <= cut && std::abs(ky) <= cut && std::abs(kz) <= cut) ? 1 : 0;
    });
    it = cache.emplace(std::pair<int, double>{g.n, g.dealias_fraction}, std::move(t)).first;
  }
  return it->second;
}

SpectralVectorField gradient(const SpectralScalarField& s) {
  SpectralVectorField g(s.grid());
  for_each_mode(s.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const Complex ik = Complex{0.0, 1.0} * s.at(idx);
    g.at(0, idx) = static_cast<double>(kx) * ik;
    g.at(1, idx) = static_cast<double>(ky) * ik;
    g.at(2, idx) = static_cast<double>(kz) * ik;
  });
  return g;
}

SpectralScalarField divergence(const SpectralVectorField& u) {
  SpectralScalarField d(u.grid());
  for_each_mode(u.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    d.at(idx) = Complex{0.0, 1.0} *
                (static_cast<double>(kx) * u.at(0, idx) +
                 static_cast<double>(ky) * u.at(1, idx) +
                 static_cast<double>(kz) * u.at(2, idx));
  });
  return d;
}

SpectralVectorField curl(const SpectralVectorField& u) {
  SpectralVectorField w(u.grid());
  const Complex i1{0.0, 1.0};
  for_each_mode(u.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const Complex ux = u.at(0, idx), uy = u.at(1, idx), uz = u.at(2, idx);
    w.at(0, idx) = i1 * (static_cast<double>(ky) * uz - static_cast<double>(kz) * uy);
    w.at(1, idx) = i1 * (static_cast<double>(kz) * ux - static_cast<double>(kx) * uz);
    w.at(2, idx) = i1 * (static_cast<double>(kx) * uy - static_cast<double>(ky) * ux);
  });
  return w;
}

SpectralVectorField leray_project(const SpectralVectorField& u) {
  SpectralVectorField p = u;
  const GridTables& t = grid_tables(u.grid());
  Complex* c0 = p.component(0).data();
  Complex* c1 = p.component(1).data();
  Complex* c2 = p.component(2).data();
  const std::size_t total = u.grid().size();
  for (std::size_t idx = 0; idx < total; ++idx) {
    const double k2 = t.k2[idx];
    if (k2 == 0.0) continue;
    const Complex f = (t.kx[idx] * c0[idx] + t.ky[idx] * c1[idx] + t.kz[idx] * c2[idx]) / k2;
    c0[idx] -= t.kx[idx] * f;
    c1[idx] -= t.ky[idx] * f;
    c2[idx] -= t.kz[idx] * f;
  }
  return p;
}

SpectralVectorField hodge_laplacian_flat(const SpectralVectorField& u) {
  require_divergence_free(u, "hodge_laplacian_flat");
  SpectralVectorField out = u;
  for_each_mode(u.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky + static_cast<double>(kz) * kz;
    for (int j = 0; j < 3; ++j) out.at(j, idx) *= k2;
  });
  return out;
}

SpectralVectorField biot_savart(const SpectralVectorField& xi) {
  require_divergence_free(xi, "biot_savart");
  const double mean = std::abs(xi.at(0, 0)) + std::abs(xi.at(1, 0)) + std::abs(xi.at(2, 0));
  if (mean > 1e-12 * (1.0 + max_abs(xi)))
    throw std::invalid_argument("biot_savart: mean mode must vanish (Laplacian not invertible on constants)");
  SpectralVectorField u(xi.grid());
  const Complex i1{0.0, 1.0};
  for_each_mode(xi.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky + static_cast<double>(kz) * kz;
    if (k2 == 0.0) return;
    const Complex xx = xi.at(0, idx), xy = xi.at(1, idx), xz = xi.at(2, idx);
    u.at(0, idx) = i1 * (static_cast<double>(ky) * xz - static_cast<double>(kz) * xy) / k2;
    u.at(1, idx) = i1 * (static_cast<double>(kz) * xx - static_cast<double>(kx) * xz) / k2;
    u.at(2, idx) = i1 * (static_cast<double>(kx) * xy - static_cast<double>(ky) * xx) / k2;
  });
  return u;
}

StrainField strain(const SpectralVectorField& u) {
  const Grid& g = u.grid();
  StrainField s(g);
  // d_i u_j as nine physical arrays, assembled pairwise
  std::array<std::array<std::vector<double>, 3>, 3> d;
  for (int i = 0; i < 3; ++i) {
    SpectralVectorField di(g);
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
      const int k[3] = {kx, ky, kz};
      const Complex ik = Complex{0.0, static_cast<double>(k[i])};
      for (int j = 0; j < 3; ++j) di.at(j, idx) = ik * u.at(j, idx);
    });
    d[i] = di.to_physical();
  }
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        s.entry_ref(i, j, idx) = 0.5 * (d[i][j][idx] + d[j][i][idx]);
  }
  return s;
}

SpectralVectorField dealias(const SpectralVectorField& u) {
  SpectralVectorField out = u;
  const GridTables& t = grid_tables(u.grid());
  for (int j = 0; j < 3; ++j) {
    Complex* c = out.component(j).data();
    for (std::size_t idx = 0; idx < t.keep.size(); ++idx)
      if (!t.keep[idx]) c[idx] = Complex{0.0, 0.0};
  }
  return out;
}

SpectralScalarField dealias(const SpectralScalarField& s) {
  SpectralScalarField out = s;
  const GridTables& t = grid_tables(s.grid());
  for (std::size_t idx = 0; idx < t.keep.size(); ++idx)
    if (!t.keep[idx]) out.at(idx) = Complex{0.0, 0.0};
  return out;
}

SpectralVectorField heat_multiplier(const SpectralVectorField& u, double s) {
  SpectralVectorField out = u;
  for_each_mode(u.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky + static_cast<double>(kz) * kz;
    const double m = std::exp(-s * k2);
    for (int j = 0; j < 3; ++j) out.at(j, idx) *= m;
  });
  return out;
}

double l2_norm_sq(const SpectralVectorField& u) {
  const double vol = kTwoPi * kTwoPi * kTwoPi;
  double acc = 0.0;
  for (int j = 0; j < 3; ++j)
    for (const Complex& c : u.component(j)) acc += std::norm(c);
  return vol * acc;
}

double l2_norm_sq(const SpectralScalarField& s) {
  const double vol = kTwoPi * kTwoPi * kTwoPi;
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += std::norm(s.at(i));
  return vol * acc;
}

double grad_norm_sq(const SpectralVectorField& u) {
  const double vol = kTwoPi * kTwoPi * kTwoPi;
  double acc = 0.0;
  for_each_mode(u.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky + static_cast<double>(kz) * kz;
    for (int j = 0; j < 3; ++j) acc += k2 * std::norm(u.at(j, idx));
  });
  return vol * acc;
}

double inner_l2(const SpectralVectorField& a, const SpectralVectorField& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("inner_l2: grid mismatch");
  const double vol = kTwoPi * kTwoPi * kTwoPi;
  double acc = 0.0;
  for (int j = 0; j < 3; ++j) {
    const auto& ca = a.component(j);
    const auto& cb = b.component(j);
    for (std::size_t i = 0; i < ca.size(); ++i) acc += (ca[i] * std::conj(cb[i])).real();
  }
  return vol * acc;
}

double divergence_ratio(const SpectralVectorField& u) {
  double worst = 0.0;
  double big = 0.0;
  for_each_mode(u.grid(), [&](std::size_t idx, int kx, int ky, int kz) {
    const Complex kd = static_cast<double>(kx) * u.at(0, idx) +
                       static_cast<double>(ky) * u.at(1, idx) +
                       static_cast<double>(kz) * u.at(2, idx);
    worst = std::max(worst, std::abs(kd));
    for (int j = 0; j < 3; ++j) big = std::max(big, std::abs(u.at(j, idx)));
  });
  return big == 0.0 ? 0.0 : worst / big;
}

bool is_divergence_free(const SpectralVectorField& u, double tol) {
  return divergence_ratio(u) <= tol;
}

void require_divergence_free(const SpectralVectorField& u, const char* who) {
  // tolerance is relative to the largest coefficient; re-checked, never assumed
  if (!is_divergence_free(u, 1e-12))
    throw std::invalid_argument(std::string(who) + ": input is not divergence-free");
}

double hermitian_defect(const SpectralVectorField& u) {
  const Grid& g = u.grid();
  double worst = 0.0;
  const double big = std::max(max_abs(u), 1e-300);
  for (int iz = 0; iz < g.n; ++iz) {
    const int miz = (g.n - iz) % g.n;
    for (int iy = 0; iy < g.n; ++iy) {
      const int miy = (g.n - iy) % g.n;
      for (int ix = 0; ix < g.n; ++ix) {
        const int mix = (g.n - ix) % g.n;
        const std::size_t a = g.index(ix, iy, iz);
        const std::size_t b = g.index(mix, miy, miz);
        for (int j = 0; j < 3; ++j)
          worst = std::max(worst, std::abs(u.at(j, b) - std::conj(u.at(j, a))));
      }
    }
  }
  return worst / big;
}

void enforce_hermitian(SpectralVectorField& u) {
  const Grid& g = u.grid();
  for (int iz = 0; iz < g.n; ++iz) {
    const int miz = (g.n - iz) % g.n;
    for (int iy = 0; iy < g.n; ++iy) {
      const int miy = (g.n - iy) % g.n;
      for (int ix = 0; ix < g.n; ++ix) {
        const int mix = (g.n - ix) % g.n;
        const std::size_t a = g.index(ix, iy, iz);
        const std::size_t b = g.index(mix, miy, miz);
        if (b < a) continue;
        for (int j = 0; j < 3; ++j) {
          if (a == b) {
            u.at(j, a) = Complex{u.at(j, a).real(), 0.0};
          } else {
            const Complex avg = 0.5 * (u.at(j, a) + std::conj(u.at(j, b)));
            u.at(j, a) = avg;
            u.at(j, b) = std::conj(avg);
          }
        }
      }
    }
  }
}

void zero_mean_mode(SpectralVectorField& u) {
  for (int j = 0; j < 3; ++j) u.at(j, 0) = Complex{0.0, 0.0};
}

bool is_mean_free(const SpectralVectorField& u, double tol) {
  const double big = std::max(max_abs(u), 1e-300);
  const double mean = std::abs(u.at(0, 0)) + std::abs(u.at(1, 0)) + std::abs(u.at(2, 0));
  return mean <= tol * big;
}

SpectralVectorField operator+(const SpectralVectorField& a, const SpectralVectorField& b) {
  SpectralVectorField out = a;
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < out.component(j).size(); ++i) out.at(j, i) += b.at(j, i);
  return out;
}

SpectralVectorField operator-(const SpectralVectorField& a, const SpectralVectorField& b) {
  SpectralVectorField out = a;
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < out.component(j).size(); ++i) out.at(j, i) -= b.at(j, i);
  return out;
}

SpectralVectorField operator*(double s, const SpectralVectorField& a) {
  SpectralVectorField out = a;
  for (int j = 0; j < 3; ++j)
    for (auto& c : out.component(j)) c *= s;
  return out;
}

void axpy(SpectralVectorField& y, double a, const SpectralVectorField& x) {
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < y.component(j).size(); ++i) y.at(j, i) += a * x.at(j, i);
}

}  // namespace nsgeo
