#include <cstdio>

#include "commands.hpp"
#include "nsgeo/snapshot.hpp"

namespace nsgeo::cli {

int cmd_snapshot_dump(const std::vector<std::string>& files) {
  for (const auto& f : files) {
    std::printf("%s: %s\n", f.c_str(), describe_snapshot(f).c_str());
  }
  return kExitOk;
}

}  // namespace nsgeo::cli
