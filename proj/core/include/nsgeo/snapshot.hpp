#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nsgeo/spectral_field.hpp"

namespace nsgeo {

/// NSRH1 snapshot container. On disk: 8-byte magic "NSRH1\0\0\0", then
/// u32 n, f64 time, f64 nu, u32 field count, one 16-byte ASCII name per
/// field, followed per field by 3*n^3 little-endian f64 values in x-fastest
/// physical-space order.
struct Snapshot {
  double time = 0.0;
  double nu = 0.0;
  Grid grid;
  std::vector<std::pair<std::string, SpectralVectorField>> fields;

  const SpectralVectorField* find(const std::string& name) const;
};

void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

/// Header summary without loading field data: n, time, nu, field names.
std::string describe_snapshot(const std::string& path);

}  // namespace nsgeo
