#include "nsgeo/fft3.hpp"

#include <fftw3.h>
#include <malloc.h>

#include <map>
#include <mutex>

namespace nsgeo::fft3 {

namespace {

struct Plans {
  fftw_plan fwd;
  fftw_plan bwd;
};

// Plan creation is not thread-safe in FFTW; execution via the new-array
// interface is. FFTW_UNALIGNED lets cached plans run on any heap buffer.
// Production resolutions get measured plans; tiny grids stick to estimates
// to keep startup instant.
Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  static std::mutex mu;
  // field buffers exceed the default mmap threshold; keep them on the heap
  // free list instead of cycling pages through the kernel
  static const int mallopt_once = []() { return mallopt(M_MMAP_THRESHOLD, 1 << 30); }();
  (void)mallopt_once;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    const std::size_t total = static_cast<std::size_t>(n) * n * n;
    fftw_complex* buf = fftw_alloc_complex(total);
    const unsigned flags = (n >= 32 ? FFTW_MEASURE : FFTW_ESTIMATE) | FFTW_UNALIGNED;
    Plans p;
    p.fwd = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD, flags);
    p.bwd = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD, flags);
    fftw_free(buf);
    it = cache.emplace(n, p).first;
  }
  return it->second;
}

}  // namespace

void forward(std::complex<double>* data, int n) {
  Plans& p = plans_for(n);
  fftw_complex* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p.fwd, d, d);
  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  const double scale = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < total; ++i) data[i] *= scale;
}

void inverse(std::complex<double>* data, int n) {
  Plans& p = plans_for(n);
  fftw_complex* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p.bwd, d, d);
}

void forward_unscaled(std::complex<double>* data, int n) {
  Plans& p = plans_for(n);
  fftw_complex* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p.fwd, d, d);
}

}  // namespace nsgeo::fft3
