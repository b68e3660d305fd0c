#pragma once

#include <cstdint>

#include "nsgeo/spectral_field.hpp"

namespace nsgeo {

/// Arnold-Beltrami-Childress flow: an eigenfield of curl with eigenvalue 1.
SpectralVectorField abc_field(const Grid& g, double A = 1.0, double B = 1.0, double C = 1.0);

/// Taylor-Green vortex (sin x cos y cos z, -cos x sin y cos z, 0).
SpectralVectorField taylor_green_field(const Grid& g);

/// Band-limited Gaussian field, Leray-projected, zero mean, normalized so the
/// L2 energy (1/2)||u||^2 equals `energy`. Bit-reproducible from the seed.
SpectralVectorField random_divfree_field(const Grid& g, std::uint64_t seed, int kmax = 4, double energy = 0.5);

}  // namespace nsgeo
