#include <doctest.h>

#include <cmath>

#include "nsgeo/init.hpp"
#include "nsgeo/rng.hpp"
#include "nsgeo/spectral_field.hpp"
#include "test_helpers.hpp"

using namespace nsgeo;
using namespace nsgeo::test;

namespace {

SpectralVectorField random_real_field(const Grid& g, std::uint64_t seed) {
  Philox rng(seed, stream_id("test.random_field", 0));
  std::array<std::vector<double>, 3> v;
  for (auto& a : v) {
    a.resize(g.size());
    for (auto& x : a) x = rng.gaussian();
  }
  return SpectralVectorField::from_physical(g, v);
}

SpectralVectorField random_smooth_divfree(const Grid& g, std::uint64_t seed) {
  return random_divfree_field(g, seed, g.n / 4);
}

}  // namespace

TEST_CASE("fft roundtrip") {
  const Grid g(16);
  SUBCASE("random real field") {
    const auto u = random_real_field(g, 7);
    const auto v = fft_roundtrip(u);
    CHECK(max_coeff_diff(u, v) <= 1e-12 * max_coeff(u));
  }
  SUBCASE("zero field") {
    const SpectralVectorField z(g);
    CHECK(max_coeff_diff(z, fft_roundtrip(z)) == 0.0);
  }
  SUBCASE("single mode") {
    const auto u = single_mode(g, 1, 0, 0, 0.0, 0.0, 1.0);
    CHECK(max_coeff_diff(u, fft_roundtrip(u)) <= 1e-13);
  }
}

TEST_CASE("gradient") {
  const Grid g(16);
  SUBCASE("sin x") {
    const auto s = scalar_from_closure(g, [](double x, double, double) { return std::sin(x); });
    const auto expect = field_from_closure(g, [](double x, double, double) {
      return std::array<double, 3>{std::cos(x), 0.0, 0.0};
    });
    CHECK(max_coeff_diff(gradient(s), expect) <= 1e-13);
  }
  SUBCASE("constant") {
    const auto s = scalar_from_closure(g, [](double, double, double) { return 3.5; });
    CHECK(max_coeff(gradient(s)) <= 1e-14);
  }
  SUBCASE("sin x sin y") {
    const auto s = scalar_from_closure(g, [](double x, double y, double) { return std::sin(x) * std::sin(y); });
    const auto expect = field_from_closure(g, [](double x, double y, double) {
      return std::array<double, 3>{std::cos(x) * std::sin(y), std::sin(x) * std::cos(y), 0.0};
    });
    CHECK(max_coeff_diff(gradient(s), expect) <= 1e-13);
  }
}

TEST_CASE("curl") {
  const Grid g(16);
  SUBCASE("ABC field is a curl eigenfield") {
    const auto u = abc_field(g);
    CHECK(max_coeff_diff(curl(u), u) <= 1e-13);
  }
  SUBCASE("constant field") {
    const auto u = field_from_closure(g, [](double, double, double) {
      return std::array<double, 3>{1.0, -2.0, 0.5};
    });
    CHECK(max_coeff(curl(u)) <= 1e-14);
  }
  SUBCASE("(0,0,sin x)") {
    const auto u = field_from_closure(g, [](double x, double, double) {
      return std::array<double, 3>{0.0, 0.0, std::sin(x)};
    });
    const auto expect = field_from_closure(g, [](double x, double, double) {
      return std::array<double, 3>{0.0, -std::cos(x), 0.0};
    });
    CHECK(max_coeff_diff(curl(u), expect) <= 1e-13);
  }
}

TEST_CASE("divergence") {
  const Grid g(16);
  SUBCASE("ABC") {
    double m = 0.0;
    const auto d = divergence(abc_field(g));
    for (std::size_t i = 0; i < d.size(); ++i) m = std::max(m, std::abs(d.at(i)));
    CHECK(m <= 1e-13);
  }
  SUBCASE("x-independent shear") {
    const auto u = field_from_closure(g, [](double, double y, double) {
      return std::array<double, 3>{std::sin(y), 0.0, 0.0};
    });
    const auto d = divergence(u);
    double m = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) m = std::max(m, std::abs(d.at(i)));
    CHECK(m <= 1e-14);
  }
  SUBCASE("divergence of gradient of sin x is -sin x") {
    const auto s = scalar_from_closure(g, [](double x, double, double) { return std::sin(x); });
    const auto lap = divergence(gradient(s));
    const auto expect = scalar_from_closure(g, [](double x, double, double) { return -std::sin(x); });
    double m = 0.0;
    for (std::size_t i = 0; i < lap.size(); ++i) m = std::max(m, std::abs(lap.at(i) - expect.at(i)));
    CHECK(m <= 1e-13);
  }
}

TEST_CASE("leray projection") {
  const Grid g(16);
  SUBCASE("gradient projects to zero") {
    const auto s = scalar_from_closure(g, [](double x, double y, double) { return std::sin(x) * std::sin(y); });
    CHECK(max_coeff(leray_project(gradient(s))) <= 1e-14);
  }
  SUBCASE("ABC is invariant") {
    const auto u = abc_field(g);
    CHECK(max_coeff_diff(leray_project(u), u) <= 1e-14);
  }
  SUBCASE("u + grad p recovers u") {
    const auto u = random_smooth_divfree(g, 11);
    const auto p = scalar_from_closure(g, [](double x, double y, double z) { return std::cos(x + y) * std::sin(z); });
    const auto sum = u + gradient(p);
    CHECK(max_coeff_diff(leray_project(sum), u) <= 1e-13);
  }
  SUBCASE("idempotent on random fields") {
    const auto w = random_real_field(g, 3);
    const auto p1 = leray_project(w);
    const auto p2 = leray_project(p1);
    CHECK(max_coeff_diff(p1, p2) <= 1e-12 * max_coeff(p1));
  }
}

TEST_CASE("hodge laplacian (flat)") {
  const Grid g(16);
  SUBCASE("ABC eigenfield") {
    const auto u = abc_field(g);
    CHECK(max_coeff_diff(hodge_laplacian_flat(u), u) <= 1e-13);
  }
  SUBCASE("single projected mode") {
    auto u = leray_project(single_mode(g, 0, 0, 1, 1.0, 0.5, 0.0));
    const auto lap = hodge_laplacian_flat(u);
    CHECK(max_coeff_diff(lap, u) <= 1e-14);  // |k|^2 = 1
  }
  SUBCASE("constant field maps to zero") {
    const auto u = field_from_closure(g, [](double, double, double) {
      return std::array<double, 3>{2.0, 0.0, -1.0};
    });
    CHECK(max_coeff(hodge_laplacian_flat(u)) <= 1e-14);
  }
  SUBCASE("rejects non-divergence-free input") {
    const auto s = scalar_from_closure(g, [](double x, double, double) { return std::sin(x); });
    CHECK_THROWS_AS((void)hodge_laplacian_flat(gradient(s)), std::invalid_argument);
  }
  SUBCASE("equals curl of curl on divergence-free fields") {
    const auto u = random_smooth_divfree(g, 5);
    const auto a = hodge_laplacian_flat(u);
    const auto b = curl(curl(u));
    CHECK(max_coeff_diff(a, b) <= 1e-10 * std::max(1.0, max_coeff(a)));
  }
}

TEST_CASE("biot-savart") {
  const Grid g(16);
  SUBCASE("ABC eigenfield") {
    const auto xi = abc_field(g);
    CHECK(max_coeff_diff(biot_savart(xi), xi) <= 1e-13);
  }
  SUBCASE("round trip on random data") {
    const auto u0 = random_smooth_divfree(g, 21);
    const auto xi = curl(u0);
    CHECK(rel_l2_diff(biot_savart(xi), u0) <= 1e-10);
  }
  SUBCASE("zero maps to zero") {
    const SpectralVectorField z(g);
    CHECK(max_coeff(biot_savart(z)) == 0.0);
  }
  SUBCASE("nonzero mean rejected") {
    auto xi = abc_field(g);
    xi.at(0, 0) = Complex{1.0, 0.0};
    CHECK_THROWS_AS((void)biot_savart(xi), std::invalid_argument);
  }
}

TEST_CASE("strain") {
  const Grid g(16);
  SUBCASE("linear shear") {
    // u = (gamma sin y, 0, 0) is the periodic version; at y=0 the gradient
    // matches the plane shear and S12 = gamma cos(y) / 2
    const double gamma = 0.8;
    const auto u = field_from_closure(g, [gamma](double, double y, double) {
      return std::array<double, 3>{gamma * std::sin(y), 0.0, 0.0};
    });
    const auto s = strain(u);
    for (int iy : {0, 3, 7}) {
      const std::size_t i = g.index(0, iy, 0);
      const double expect = 0.5 * gamma * std::cos(g.coord(iy));
      CHECK(std::abs(s.entry(0, 1, i) - expect) <= 1e-12);
      CHECK(std::abs(s.entry(0, 0, i)) <= 1e-13);
      CHECK(std::abs(s.entry(2, 2, i)) <= 1e-13);
    }
  }
  SUBCASE("pointwise rigid rotation has no strain") {
    // u = (-sin y, sin x, 0) is the periodic rotation generator; its gradient
    // is exactly antisymmetric wherever cos x = cos y, so the strain must
    // vanish along the diagonal
    const auto u = field_from_closure(g, [](double x, double y, double) {
      return std::array<double, 3>{-std::sin(y), std::sin(x), 0.0};
    });
    const auto s = strain(u);
    for (int d = 0; d < g.n; ++d) {
      const std::size_t i = g.index(d, d, 0);
      for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) CHECK(std::abs(s.entry(a, b, i)) <= 1e-13);
    }
  }
  SUBCASE("ABC strain matches finite differences of the closure") {
    const auto u = abc_field(g);
    const auto s = strain(u);
    auto abc = [](double x, double y, double z) {
      return std::array<double, 3>{std::sin(z) + std::cos(y), std::sin(x) + std::cos(z), std::sin(y) + std::cos(x)};
    };
    const double h = 1e-5;
    const std::size_t i0 = g.index(2, 5, 9);
    const double x = g.coord(2), y = g.coord(5), z = g.coord(9);
    auto d = [&](int i, int j) {
      double pp[3] = {x, y, z}, mm[3] = {x, y, z};
      pp[i] += h;
      mm[i] -= h;
      return (abc(pp[0], pp[1], pp[2])[j] - abc(mm[0], mm[1], mm[2])[j]) / (2 * h);
    };
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        CHECK(std::abs(s.entry(i, j, i0) - 0.5 * (d(i, j) + d(j, i))) <= 1e-9);
  }
  SUBCASE("trace vanishes for divergence-free fields") {
    const auto u = random_smooth_divfree(g, 2);
    const auto s = strain(u);
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      m = std::max(m, std::abs(s.entry(0, 0, i) + s.entry(1, 1, i) + s.entry(2, 2, i)));
    CHECK(m <= 1e-10);
  }
}

TEST_CASE("dealias") {
  const Grid g(16);  // cutoff at 2/3 * 8 = 5.33
  SUBCASE("low modes kept bit-exact") {
    const auto u = single_mode(g, 3, -2, 1, 1.0, 0.0, 2.0);
    const auto v = dealias(u);
    CHECK(max_coeff_diff(u, v) == 0.0);
  }
  SUBCASE("single mode above cutoff zeroed") {
    const auto u = single_mode(g, 6, 0, 0, 1.0, 1.0, 1.0);
    CHECK(max_coeff(dealias(u)) == 0.0);
  }
  SUBCASE("mixed field keeps only low part") {
    const auto lo = single_mode(g, 2, 2, 2, 1.0, 0.0, 0.0);
    const auto hi = single_mode(g, 7, 0, 0, 0.0, 1.0, 0.0);
    const auto v = dealias(lo + hi);
    CHECK(max_coeff_diff(v, lo) == 0.0);
  }
}

TEST_CASE("composition identities") {
  const Grid g(16);
  SUBCASE("curl of gradient vanishes") {
    const auto s = scalar_from_closure(g, [](double x, double y, double z) {
      return std::sin(x) * std::cos(2 * y) + std::sin(z);
    });
    CHECK(max_coeff(curl(gradient(s))) <= 1e-12);
  }
  SUBCASE("divergence of curl vanishes") {
    const auto u = random_real_field(g, 17);
    const auto d = divergence(curl(u));
    double m = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) m = std::max(m, std::abs(d.at(i)));
    CHECK(m <= 1e-12 * max_coeff(u));
  }
  SUBCASE("biot-savart inverts curl") {
    const auto u = random_smooth_divfree(g, 23);
    CHECK(rel_l2_diff(biot_savart(curl(u)), u) <= 1e-10);
  }
}

TEST_CASE("parseval") {
  const Grid g(16);
  const auto u = random_real_field(g, 31);
  const auto phys = u.to_physical();
  double phys_norm = 0.0;
  const double cell = std::pow(kTwoPi / g.n, 3);
  for (int j = 0; j < 3; ++j)
    for (double v : phys[j]) phys_norm += v * v * cell;
  CHECK(std::abs(phys_norm - l2_norm_sq(u)) <= 1e-12 * phys_norm);
}

TEST_CASE("hermitian symmetry invariants") {
  const Grid g(8);
  auto u = random_real_field(g, 41);
  CHECK(hermitian_defect(u) <= 1e-13);
  u.at(1, g.index(1, 2, 3)) += Complex{0.1, 0.2};
  CHECK(hermitian_defect(u) > 1e-3);
  enforce_hermitian(u);
  CHECK(hermitian_defect(u) <= 1e-15);
}

TEST_CASE("divergence-free flag checking") {
  const Grid g(16);
  CHECK(is_divergence_free(abc_field(g)));
  const auto s = scalar_from_closure(g, [](double x, double, double) { return std::sin(x); });
  CHECK_FALSE(is_divergence_free(gradient(s)));
}
