#include "nsgeo/init.hpp"

#include <cmath>
#include <tuple>

#include "nsgeo/rng.hpp"

namespace nsgeo {

SpectralVectorField abc_field(const Grid& g, double A, double B, double C) {
  std::array<std::vector<double>, 3> v;
  for (auto& a : v) a.resize(g.size());
  for (int iz = 0; iz < g.n; ++iz) {
    const double z = g.coord(iz);
    for (int iy = 0; iy < g.n; ++iy) {
      const double y = g.coord(iy);
      for (int ix = 0; ix < g.n; ++ix) {
        const double x = g.coord(ix);
        const std::size_t i = g.index(ix, iy, iz);
        v[0][i] = A * std::sin(z) + C * std::cos(y);
        v[1][i] = B * std::sin(x) + A * std::cos(z);
        v[2][i] = C * std::sin(y) + B * std::cos(x);
      }
    }
  }
  return SpectralVectorField::from_physical(g, v);
}

SpectralVectorField taylor_green_field(const Grid& g) {
  std::array<std::vector<double>, 3> v;
  for (auto& a : v) a.resize(g.size());
  for (int iz = 0; iz < g.n; ++iz) {
    const double z = g.coord(iz);
    for (int iy = 0; iy < g.n; ++iy) {
      const double y = g.coord(iy);
      for (int ix = 0; ix < g.n; ++ix) {
        const double x = g.coord(ix);
        const std::size_t i = g.index(ix, iy, iz);
        v[0][i] = std::sin(x) * std::cos(y) * std::cos(z);
        v[1][i] = -std::cos(x) * std::sin(y) * std::cos(z);
        v[2][i] = 0.0;
      }
    }
  }
  return SpectralVectorField::from_physical(g, v);
}

SpectralVectorField random_divfree_field(const Grid& g, std::uint64_t seed, int kmax, double energy) {
  SpectralVectorField u(g);
  kmax = std::min(kmax, g.n / 2 - 1);  // keep clear of the Nyquist planes
  // Fill modes in fixed index order with one stream per mode; conjugate
  // partners are set together so Hermitian symmetry is exact by construction.
  std::size_t mode_counter = 0;
  for (int iz = 0; iz < g.n; ++iz) {
    for (int iy = 0; iy < g.n; ++iy) {
      for (int ix = 0; ix < g.n; ++ix) {
        const int kx = g.wavenumber(ix), ky = g.wavenumber(iy), kz = g.wavenumber(iz);
        ++mode_counter;
        if (std::abs(kx) > kmax || std::abs(ky) > kmax || std::abs(kz) > kmax) continue;
        if (kx == 0 && ky == 0 && kz == 0) continue;
        // handle each +/-k pair once, keyed by lexicographic order
        if (std::tuple{kx, ky, kz} < std::tuple{-kx, -ky, -kz}) continue;
        Philox rng(seed, stream_id("init.random_divfree", mode_counter));
        const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
        const double amp = 1.0 / (1.0 + k2);
        const std::size_t a = g.index(ix, iy, iz);
        const std::size_t b = g.index((g.n - ix) % g.n, (g.n - iy) % g.n, (g.n - iz) % g.n);
        for (int j = 0; j < 3; ++j) {
          const Complex c{amp * rng.gaussian(), amp * rng.gaussian()};
          u.at(j, a) = c;
          u.at(j, b) = std::conj(c);
        }
      }
    }
  }
  u = leray_project(u);
  zero_mean_mode(u);
  const double e0 = 0.5 * l2_norm_sq(u);
  if (e0 > 0.0) u = std::sqrt(energy / e0) * u;
  return u;
}

}  // namespace nsgeo
