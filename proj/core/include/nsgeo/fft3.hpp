#pragma once

#include <complex>

namespace nsgeo {

/// In-place 3-D complex transforms on an n^3 array in x-fastest order.
/// forward() maps physical samples to Fourier coefficients with the 1/n^3
/// normalization, so u(x) = sum_k c(k) exp(i k.x); inverse() is the exact
/// inverse. Plans are cached per resolution and safe to use from several
/// threads on distinct arrays.
namespace fft3 {

void forward(std::complex<double>* data, int n);
void inverse(std::complex<double>* data, int n);

/// Forward transform without the 1/n^3 normalization; callers fold the scale
/// into their own post-pass.
void forward_unscaled(std::complex<double>* data, int n);

}  // namespace fft3

}  // namespace nsgeo
