#include "nsgeo/snapshot.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nsgeo {

namespace {

constexpr char kMagic[8] = {'N', 'S', 'R', 'H', '1', '\0', '\0', '\0'};

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("snapshot: truncated file");
  return v;
}

}  // namespace

const SpectralVectorField* Snapshot::find(const std::string& name) const {
  for (const auto& [n, f] : fields)
    if (n == name) return &f;
  return nullptr;
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path + " for writing");
  os.write(kMagic, 8);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(snap.grid.n));
  put<double>(os, snap.time);
  put<double>(os, snap.nu);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(snap.fields.size()));
  for (const auto& [name, f] : snap.fields) {
    char buf[16] = {};
    std::memcpy(buf, name.data(), std::min<std::size_t>(name.size(), 15));
    os.write(buf, 16);
  }
  for (const auto& [name, f] : snap.fields) {
    const auto phys = f.to_physical();
    for (int j = 0; j < 3; ++j)
      os.write(reinterpret_cast<const char*>(phys[j].data()),
               static_cast<std::streamsize>(phys[j].size() * sizeof(double)));
  }
  if (!os) throw std::runtime_error("snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("snapshot: bad magic in " + path);
  Snapshot snap;
  const auto n = get<std::uint32_t>(is);
  snap.time = get<double>(is);
  snap.nu = get<double>(is);
  const auto count = get<std::uint32_t>(is);
  snap.grid = Grid(static_cast<int>(n));
  std::vector<std::string> names;
  for (std::uint32_t i = 0; i < count; ++i) {
    char buf[16];
    is.read(buf, 16);
    if (!is) throw std::runtime_error("snapshot: truncated header in " + path);
    names.emplace_back(buf, strnlen(buf, 16));
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    std::array<std::vector<double>, 3> phys;
    for (int j = 0; j < 3; ++j) {
      phys[j].resize(snap.grid.size());
      is.read(reinterpret_cast<char*>(phys[j].data()),
              static_cast<std::streamsize>(phys[j].size() * sizeof(double)));
      if (!is) throw std::runtime_error("snapshot: truncated data in " + path);
    }
    snap.fields.emplace_back(names[i], SpectralVectorField::from_physical(snap.grid, phys));
  }
  return snap;
}

std::string describe_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path);
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("snapshot: bad magic in " + path);
  const auto n = get<std::uint32_t>(is);
  const double time = get<double>(is);
  const double nu = get<double>(is);
  const auto count = get<std::uint32_t>(is);
  std::ostringstream out;
  out << "n=" << n << " time=" << time << " nu=" << nu << " fields=" << count << " [";
  for (std::uint32_t i = 0; i < count; ++i) {
    char buf[16];
    is.read(buf, 16);
    if (!is) throw std::runtime_error("snapshot: truncated header in " + path);
    out << (i ? " " : "") << std::string(buf, strnlen(buf, 16));
  }
  out << "]";
  return out.str();
}

}  // namespace nsgeo
