#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include "commands.hpp"
#include "nsgeo/diagnostics.hpp"
#include "nsgeo/snapshot.hpp"

namespace nsgeo::cli {

int cmd_diagnose(const std::string& snap_dir, double tol, double gap_tol) {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(snap_dir))
    if (e.path().extension() == ".nsrh1") files.push_back(e.path().string());
  if (files.size() < 3) {
    std::fprintf(stderr, "diagnose: need at least 3 snapshots in %s\n", snap_dir.c_str());
    return kExitUsage;
  }
  std::sort(files.begin(), files.end());

  std::vector<DiagnosticsRecord> series;
  double nu = 0.0;
  for (const auto& f : files) {
    const Snapshot snap = read_snapshot(f);
    const SpectralVectorField* u = snap.find("u");
    const SpectralVectorField* xi = snap.find("xi");
    if (!u || !xi) {
      std::fprintf(stderr, "diagnose: snapshot %s lacks the u/xi pair\n", f.c_str());
      return kExitUsage;
    }
    nu = snap.nu;
    FlowState st;
    st.time = snap.time;
    st.u = *u;
    st.xi = *xi;
    series.push_back(sample_diagnostics(st, nu));
  }
  std::sort(series.begin(), series.end(),
            [](const DiagnosticsRecord& a, const DiagnosticsRecord& b) { return a.time < b.time; });
  fill_residuals(series, nu);

  const auto csv = (std::filesystem::path(snap_dir) / "identities.csv").string();
  std::ofstream os(csv);
  os.precision(15);
  os << "time,energy,enstrophy,helicity,energy_residual,enstrophy_residual_strain,"
        "enstrophy_residual_ricci,helicity_residual,enstrophy_forms_gap,vorticity_consistency\n";
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    const auto& r = series[i];
    os << r.time << ',' << r.energy << ',' << r.enstrophy << ',' << r.helicity << ',' << r.residual_energy << ','
       << r.residual_enstrophy << ',' << r.residual_enstrophy_ricci << ',' << r.residual_helicity << ','
       << r.enstrophy_forms_gap << ',' << r.vorticity_consistency << '\n';
  }
  const ResidualSummary sum = summarize_residuals(series);
  os << "max,,,," << sum.max_energy << ',' << sum.max_enstrophy << ',' << sum.max_enstrophy_ricci << ','
     << sum.max_helicity << ',' << sum.max_forms_gap << ',' << sum.max_vorticity_consistency << '\n';
  os.close();

  std::printf("diagnose: %zu snapshots, nu=%g -> %s\n", series.size(), nu, csv.c_str());
  std::printf("diagnose: max residuals  energy=%.3e enstrophy=%.3e/%.3e helicity=%.3e gap=%.3e\n", sum.max_energy,
              sum.max_enstrophy, sum.max_enstrophy_ricci, sum.max_helicity, sum.max_forms_gap);
  const bool ok = sum.max_energy <= tol && sum.max_enstrophy <= tol && sum.max_enstrophy_ricci <= tol &&
                  sum.max_helicity <= tol && sum.max_forms_gap <= gap_tol;
  std::printf("diagnose: %s\n", ok ? "PASS" : "FAIL");
  return ok ? kExitOk : kExitResidual;
}

}  // namespace nsgeo::cli
