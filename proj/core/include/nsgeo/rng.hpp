#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace nsgeo {

/// Counter-based Philox4x32-10 generator. Streams are keyed by
/// (seed, stream id), so path ensembles are reproducible and independent of
/// scheduling: stream k always yields the same sequence for a given seed.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream)
      : key0_(static_cast<std::uint32_t>(seed)),
        key1_(static_cast<std::uint32_t>(seed >> 32)),
        ctr2_(static_cast<std::uint32_t>(stream)),
        ctr3_(static_cast<std::uint32_t>(stream >> 32)) {}

  std::uint32_t next_u32() {
    if (have_ == 0) {
      block();
      have_ = 4;
    }
    return out_[--have_];
  }

  /// Uniform on (0,1): (x + 0.5) / 2^32, never exactly 0 or 1.
  double uniform() { return (static_cast<double>(next_u32()) + 0.5) * 0x1p-32; }

  /// Standard normal via Box-Muller, one spare cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
  }

  void block() {
    std::uint32_t c0 = ctr0_, c1 = ctr1_, c2 = ctr2_, c3 = ctr3_;
    std::uint32_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(0xD2511F53u, c0, hi0, lo0);
      mulhilo(0xCD9E8D57u, c2, hi1, lo1);
      const std::uint32_t n0 = hi1 ^ c1 ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c3 ^ k1;
      const std::uint32_t n3 = lo0;
      c0 = n0; c1 = n1; c2 = n2; c3 = n3;
      k0 += 0x9E3779B9u;
      k1 += 0xBB67AE85u;
    }
    out_[0] = c0; out_[1] = c1; out_[2] = c2; out_[3] = c3;
    if (++ctr0_ == 0) ++ctr1_;
  }

  std::uint32_t key0_, key1_;
  std::uint32_t ctr0_ = 0, ctr1_ = 0, ctr2_, ctr3_;
  std::uint32_t out_[4] = {};
  int have_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Stream ids derive from a purpose tag plus an index (FNV-1a over the tag),
/// so distinct subsystems never share a stream for the same top-level seed.
inline std::uint64_t stream_id(std::string_view purpose, std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char ch : purpose) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ull;
  }
  h ^= index + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

}  // namespace nsgeo
