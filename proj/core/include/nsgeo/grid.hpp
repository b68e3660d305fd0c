#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace nsgeo {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform periodic grid on [0,2pi)^3. Wavenumbers per axis run over
/// -n/2+1 .. n/2; the Nyquist mode sits at +n/2.
struct Grid {
  int n = 16;
  double dealias_fraction = 2.0 / 3.0;

  Grid() = default;
  explicit Grid(int n_, double frac = 2.0 / 3.0) : n(n_), dealias_fraction(frac) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("Grid: n must be even and >= 4");
    if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
      throw std::invalid_argument("Grid: dealias_fraction must be in (0,1]");
  }

  std::size_t size() const { return static_cast<std::size_t>(n) * n * n; }

  int wavenumber(int idx) const { return idx <= n / 2 ? idx : idx - n; }

  // x-fastest storage order, matching the snapshot layout
  std::size_t index(int ix, int iy, int iz) const {
    return static_cast<std::size_t>(ix) + static_cast<std::size_t>(n) * (iy + static_cast<std::size_t>(n) * iz);
  }

  double spacing() const { return kTwoPi / n; }
  double coord(int idx) const { return spacing() * idx; }
  double dealias_cutoff() const { return dealias_fraction * (n / 2); }

  bool operator==(const Grid&) const = default;
};

}  // namespace nsgeo
