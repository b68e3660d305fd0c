#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nsgeo/config.hpp"
#include "nsgeo/snapshot.hpp"
#include "test_helpers.hpp"

using namespace nsgeo;
using namespace nsgeo::test;

namespace {

const char* kGoodConfig =
    "# basic run\n"
    "grid.n = 16\n"
    "fluid.nu = 0.1\n"
    "time.dt = 1e-3\n"
    "time.t_end = 0.5   # half a unit\n"
    "init.kind = abc\n"
    "seed = 42\n";

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("valid config") {
    const RunConfig cfg = parse_config(kGoodConfig);
    CHECK(cfg.grid_n == 16);
    CHECK(cfg.nu == doctest::Approx(0.1));
    CHECK(cfg.dt == doctest::Approx(1e-3));
    CHECK(cfg.t_end == doctest::Approx(0.5));
    CHECK(cfg.init_kind == InitKind::abc);
    CHECK(cfg.seed == 42);
    CHECK(cfg.scheme == Scheme::if_rk4);
  }
  SUBCASE("out-of-range value names the key") {
    try {
      parse_config("grid.n = 16\nfluid.nu = -1\ntime.dt = 1e-3\ntime.t_end = 1\ninit.kind = abc\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("fluid.nu") != std::string::npos);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SUBCASE("duplicate key cites both lines") {
    try {
      parse_config("grid.n = 16\ngrid.n = 8\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("duplicate") != std::string::npos);
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find("line 1") != std::string::npos);
    }
  }
  SUBCASE("unknown key rejected") {
    CHECK_THROWS_AS((void)parse_config("grid.m = 16\n"), ConfigError);
  }
  SUBCASE("missing required key") {
    CHECK_THROWS_AS((void)parse_config("grid.n = 16\n"), ConfigError);
  }
  SUBCASE("mollified scheme requires epsilon") {
    const std::string base =
        "grid.n = 16\nfluid.nu = 0.1\ntime.dt = 1e-3\ntime.t_end = 0.5\ninit.kind = abc\nscheme = mollified\n";
    CHECK_THROWS_AS((void)parse_config(base), ConfigError);
    const RunConfig ok = parse_config(base + "epsilon = 0.05\n");
    CHECK(ok.epsilon == doctest::Approx(0.05));
  }
  SUBCASE("file kind requires a path") {
    CHECK_THROWS_AS(
        (void)parse_config("grid.n = 16\nfluid.nu = 0.1\ntime.dt = 1e-3\ntime.t_end = 0.5\ninit.kind = file\n"),
        ConfigError);
  }
  SUBCASE("malformed line carries its number") {
    try {
      parse_config("grid.n = 16\nnot a key value pair\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("initial fields from config") {
  SUBCASE("abc is a curl eigenfield") {
    RunConfig cfg = parse_config(kGoodConfig);
    const auto u = init_field(cfg);
    CHECK(max_coeff_diff(curl(u), u) <= 1e-12);
    CHECK(is_divergence_free(u));
    CHECK(is_mean_free(u));
  }
  SUBCASE("taylor-green is divergence- and helicity-free") {
    RunConfig cfg = parse_config(kGoodConfig);
    cfg.init_kind = InitKind::taylor_green;
    const auto u = init_field(cfg);
    CHECK(divergence_ratio(u) <= 1e-12);
    CHECK(std::abs(inner_l2(u, curl(u))) <= 1e-10 * l2_norm_sq(curl(u)));
  }
  SUBCASE("random field is reproducible bit-exactly") {
    RunConfig cfg = parse_config(kGoodConfig);
    cfg.init_kind = InitKind::random_divfree;
    const auto a = init_field(cfg);
    const auto b = init_field(cfg);
    CHECK(max_coeff_diff(a, b) == 0.0);
    CHECK(is_divergence_free(a));
    cfg.seed = 43;
    const auto c = init_field(cfg);
    CHECK(max_coeff_diff(a, c) > 0.0);
  }
}

TEST_CASE("snapshot round trip") {
  const Grid g(8);
  const auto u = abc_field(g);
  const auto xi = curl(u);
  Snapshot snap;
  snap.time = 0.75;
  snap.nu = 0.05;
  snap.grid = g;
  snap.fields.emplace_back("u", u);
  snap.fields.emplace_back("xi", xi);
  const auto path = (std::filesystem::temp_directory_path() / "nsgeo_snap_test.nsrh1").string();
  write_snapshot(path, snap);

  SUBCASE("values survive bit-exactly") {
    const Snapshot back = read_snapshot(path);
    CHECK(back.time == 0.75);
    CHECK(back.nu == 0.05);
    CHECK(back.grid.n == 8);
    REQUIRE(back.find("u") != nullptr);
    REQUIRE(back.find("xi") != nullptr);
    const auto pa = u.to_physical();
    const auto pb = back.find("u")->to_physical();
    for (int j = 0; j < 3; ++j)
      for (std::size_t i = 0; i < pa[j].size(); ++i) CHECK(pa[j][i] == doctest::Approx(pb[j][i]).epsilon(1e-14));
  }
  SUBCASE("header summary") {
    const std::string desc = describe_snapshot(path);
    CHECK(desc.find("n=8") != std::string::npos);
    CHECK(desc.find("u") != std::string::npos);
    CHECK(desc.find("xi") != std::string::npos);
  }
  SUBCASE("bad magic rejected") {
    const auto bad = (std::filesystem::temp_directory_path() / "nsgeo_bad.nsrh1").string();
    std::ofstream os(bad, std::ios::binary);
    os << "NOTMAGIC and some trailing bytes";
    os.close();
    CHECK_THROWS_AS((void)read_snapshot(bad), std::runtime_error);
    std::filesystem::remove(bad);
  }
  SUBCASE("config init from snapshot file") {
    RunConfig cfg = parse_config(kGoodConfig);
    cfg.init_kind = InitKind::file;
    cfg.init_path = path;
    cfg.grid_n = 8;
    const auto v = init_field(cfg);
    CHECK(max_coeff_diff(v, u) <= 1e-12);
  }
  std::filesystem::remove(path);
}

TEST_CASE("runs are deterministic from (config, seed)") {
  RunConfig cfg = parse_config(kGoodConfig);
  cfg.init_kind = InitKind::random_divfree;
  cfg.grid_n = 8;
  cfg.t_end = 0.01;
  auto once = [&]() {
    FlowState last;
    run(FlowState::from_velocity(init_field(cfg)), cfg.fluid_params(), 5,
        [&](const RunSample& s) { last = s.state; });
    return last;
  };
  const auto a = once();
  const auto b = once();
  CHECK(max_coeff_diff(a.u, b.u) == 0.0);
  CHECK(max_coeff_diff(a.xi, b.xi) == 0.0);
}
