#include "nsgeo/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "nsgeo/snapshot.hpp"

namespace nsgeo {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct RawEntry {
  std::string value;
  int line;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const RawEntry& e, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    fail(e.line, "value of '" + key + "' is not a number: '" + e.value + "'");
  }
}

long parse_int(const RawEntry& e, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(e.value, &pos);
    if (pos != e.value.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    fail(e.line, "value of '" + key + "' is not an integer: '" + e.value + "'");
  }
}

}  // namespace

FluidParams RunConfig::fluid_params() const {
  FluidParams p;
  p.nu = nu;
  p.dt = dt;
  p.t_end = t_end;
  p.scheme = scheme;
  p.epsilon = epsilon;
  return p;
}

RunConfig parse_config(const std::string& text) {
  static const char* known_keys[] = {
      "grid.n", "grid.dealias_fraction", "fluid.nu", "time.dt", "time.t_end", "time.diag_every",
      "init.kind", "init.a", "init.b", "init.c", "init.kmax", "init.path",
      "mc.paths", "mc.dt", "seed", "scheme", "epsilon"};

  std::map<std::string, RawEntry> entries;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineno, "empty key");
    if (value.empty()) fail(lineno, "empty value for '" + key + "'");
    bool known = false;
    for (const char* k : known_keys)
      if (key == k) known = true;
    if (!known) fail(lineno, "unknown key '" + key + "'");
    auto [it, inserted] = entries.emplace(key, RawEntry{value, lineno});
    if (!inserted)
      fail(lineno, "duplicate key '" + key + "' (first set on line " + std::to_string(it->second.line) + ")");
  }

  auto take = [&](const std::string& key) -> const RawEntry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  auto require = [&](const std::string& key) -> const RawEntry& {
    const RawEntry* e = take(key);
    if (!e) throw ConfigError("config: missing required key '" + key + "'");
    return *e;
  };

  RunConfig cfg;
  {
    const RawEntry& e = require("grid.n");
    cfg.grid_n = static_cast<int>(parse_int(e, "grid.n"));
    if (cfg.grid_n < 4 || cfg.grid_n % 2 != 0) fail(e.line, "'grid.n' must be even and >= 4");
  }
  if (const RawEntry* e = take("grid.dealias_fraction")) {
    cfg.dealias_fraction = parse_double(*e, "grid.dealias_fraction");
    if (!(cfg.dealias_fraction > 0.0) || cfg.dealias_fraction > 1.0)
      fail(e->line, "'grid.dealias_fraction' must be in (0,1]");
  }
  {
    const RawEntry& e = require("fluid.nu");
    cfg.nu = parse_double(e, "fluid.nu");
    if (!(cfg.nu > 0.0)) fail(e.line, "'fluid.nu' must be positive");
  }
  {
    const RawEntry& e = require("time.dt");
    cfg.dt = parse_double(e, "time.dt");
    if (!(cfg.dt > 0.0)) fail(e.line, "'time.dt' must be positive");
  }
  {
    const RawEntry& e = require("time.t_end");
    cfg.t_end = parse_double(e, "time.t_end");
    if (cfg.t_end < 0.0) fail(e.line, "'time.t_end' must be nonnegative");
  }
  if (const RawEntry* e = take("time.diag_every")) {
    cfg.diag_every = static_cast<int>(parse_int(*e, "time.diag_every"));
    if (cfg.diag_every < 1) fail(e->line, "'time.diag_every' must be >= 1");
  }
  {
    const RawEntry& e = require("init.kind");
    if (e.value == "abc") cfg.init_kind = InitKind::abc;
    else if (e.value == "taylor_green") cfg.init_kind = InitKind::taylor_green;
    else if (e.value == "random_divfree") cfg.init_kind = InitKind::random_divfree;
    else if (e.value == "file") cfg.init_kind = InitKind::file;
    else fail(e.line, "'init.kind' must be one of abc, taylor_green, random_divfree, file");
  }
  if (const RawEntry* e = take("init.a")) cfg.init_a = parse_double(*e, "init.a");
  if (const RawEntry* e = take("init.b")) cfg.init_b = parse_double(*e, "init.b");
  if (const RawEntry* e = take("init.c")) cfg.init_c = parse_double(*e, "init.c");
  if (const RawEntry* e = take("init.kmax")) {
    cfg.init_kmax = static_cast<int>(parse_int(*e, "init.kmax"));
    if (cfg.init_kmax < 1) fail(e->line, "'init.kmax' must be >= 1");
  }
  if (const RawEntry* e = take("init.path")) cfg.init_path = e->value;
  if (cfg.init_kind == InitKind::file && cfg.init_path.empty())
    throw ConfigError("config: init.kind = file requires init.path");
  if (const RawEntry* e = take("mc.paths")) {
    cfg.mc_paths = parse_int(*e, "mc.paths");
    if (cfg.mc_paths < 1) fail(e->line, "'mc.paths' must be >= 1");
  }
  if (const RawEntry* e = take("mc.dt")) {
    cfg.mc_dt = parse_double(*e, "mc.dt");
    if (!(cfg.mc_dt > 0.0)) fail(e->line, "'mc.dt' must be positive");
  }
  if (const RawEntry* e = take("seed")) cfg.seed = static_cast<std::uint64_t>(parse_int(*e, "seed"));
  if (const RawEntry* e = take("scheme")) {
    if (e->value == "if_rk4") cfg.scheme = Scheme::if_rk4;
    else if (e->value == "mollified") cfg.scheme = Scheme::mollified;
    else fail(e->line, "'scheme' must be if_rk4 or mollified");
  }
  if (const RawEntry* e = take("epsilon")) {
    cfg.epsilon = parse_double(*e, "epsilon");
    if (!(cfg.epsilon > 0.0)) fail(e->line, "'epsilon' must be positive");
  }
  if (cfg.scheme == Scheme::mollified && !(cfg.epsilon > 0.0))
    throw ConfigError("config: scheme = mollified requires epsilon > 0");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

SpectralVectorField init_field(const RunConfig& cfg) {
  const Grid g = cfg.grid();
  switch (cfg.init_kind) {
    case InitKind::abc:
      return abc_field(g, cfg.init_a, cfg.init_b, cfg.init_c);
    case InitKind::taylor_green:
      return taylor_green_field(g);
    case InitKind::random_divfree:
      return random_divfree_field(g, cfg.seed, cfg.init_kmax);
    case InitKind::file: {
      const Snapshot snap = read_snapshot(cfg.init_path);
      const SpectralVectorField* u = snap.find("u");
      if (!u) throw ConfigError("config: snapshot " + cfg.init_path + " has no field 'u'");
      if (snap.grid.n != g.n)
        throw ConfigError("config: snapshot resolution does not match grid.n");
      SpectralVectorField out = leray_project(*u);
      zero_mean_mode(out);
      return out;
    }
  }
  throw ConfigError("config: bad init kind");
}

}  // namespace nsgeo
