#include "nsgeo/ricci_hat.hpp"

#include <stdexcept>

namespace nsgeo {

SymmetricTensorField ricci_hat_field(const SpectralVectorField& u, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("ricci_hat_field: nu must be positive");
  const Grid& g = u.grid();
  SymmetricTensorField out(g);
  const StrainField s = strain(u);
  const auto up = u.to_physical();
  const double a = 0.5 / (nu * nu);
  const double b = 1.0 / nu;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        out.entry_ref(i, j, idx) = a * up[i][idx] * up[j][idx] - b * s.entry(i, j, idx);
  }
  return out;
}

DivRicciHat div_ricci_hat(const SpectralVectorField& u, double nu) {
  require_divergence_free(u, "div_ricci_hat");
  const Grid& g = u.grid();
  const SymmetricTensorField rh = ricci_hat_field(u, nu);

  // spectral divergence over the first slot: (div M)_j = d_i M_ij
  std::array<SpectralScalarField, 6> comp_hat;
  for (int c = 0; c < 6; ++c) comp_hat[c] = SpectralScalarField::from_physical(g, rh.comp[c]);

  SpectralVectorField div(g);
  static constexpr int map[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
  std::size_t idx = 0;
  for (int iz = 0; iz < g.n; ++iz) {
    const int kz = g.wavenumber(iz);
    for (int iy = 0; iy < g.n; ++iy) {
      const int ky = g.wavenumber(iy);
      for (int ix = 0; ix < g.n; ++ix, ++idx) {
        const int k[3] = {g.wavenumber(ix), ky, kz};
        for (int j = 0; j < 3; ++j) {
          Complex acc{0.0, 0.0};
          for (int i = 0; i < 3; ++i)
            acc += Complex{0.0, static_cast<double>(k[i])} * comp_hat[map[i][j]].at(idx);
          div.at(j, idx) = acc;
        }
      }
    }
  }

  // reference expression: (1/2 nu^2) grad_u u, realized pseudo-spectrally
  const auto up = u.to_physical();
  std::array<std::vector<double>, 3> adv;
  {
    std::array<std::array<std::vector<double>, 3>, 3> d;
    for (int i = 0; i < 3; ++i) {
      SpectralVectorField di(g);
      std::size_t id2 = 0;
      for (int iz = 0; iz < g.n; ++iz) {
        const int kz = g.wavenumber(iz);
        for (int iy = 0; iy < g.n; ++iy) {
          const int ky = g.wavenumber(iy);
          for (int ix = 0; ix < g.n; ++ix, ++id2) {
            const int k[3] = {g.wavenumber(ix), ky, kz};
            const Complex ik{0.0, static_cast<double>(k[i])};
            for (int j = 0; j < 3; ++j) di.at(j, id2) = ik * u.at(j, id2);
          }
        }
      }
      d[i] = di.to_physical();
    }
    for (int j = 0; j < 3; ++j) {
      adv[j].resize(g.size());
      for (std::size_t i = 0; i < g.size(); ++i)
        adv[j][i] = up[0][i] * d[0][j][i] + up[1][i] * d[1][j][i] + up[2][i] * d[2][j][i];
    }
  }
  DivRicciHat out{std::move(div), (0.5 / (nu * nu)) * SpectralVectorField::from_physical(g, adv)};
  return out;
}

}  // namespace nsgeo
