#pragma once

#include "nsgeo/spectral_field.hpp"

namespace nsgeo {

/// Pointwise intrinsic Ricci field of the flow on the flat torus:
/// (1/2 nu^2) u (x) u - (1/nu) S(u), a symmetric tensor field in physical
/// space. Its trace is (1/2 nu^2)|u|^2.
SymmetricTensorField ricci_hat_field(const SpectralVectorField& u, double nu);

struct DivRicciHat {
  SpectralVectorField divergence;  // spectral divergence of the assembled field
  SpectralVectorField reference;   // (1/2 nu^2) grad_u u  (flat reference expression)
};

/// Divergence of the intrinsic Ricci field, together with the flat reference
/// expression (1/2 nu^2) grad_u u. The measured difference between the two
/// equals curl(curl u)/(2 nu); see the diagnostics tests.
DivRicciHat div_ricci_hat(const SpectralVectorField& u, double nu);

}  // namespace nsgeo
