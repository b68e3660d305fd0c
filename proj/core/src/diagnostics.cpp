#include "nsgeo/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "nsgeo/ricci_hat.hpp"

namespace nsgeo {

namespace {

double grid_integral(const Grid& g, const std::vector<double>& f) {
  double acc = 0.0;
  for (double v : f) acc += v;
  const double cell = (kTwoPi / g.n) * (kTwoPi / g.n) * (kTwoPi / g.n);
  return acc * cell;
}

}  // namespace

double helicity(const SpectralVectorField& u, const SpectralVectorField& xi) {
  return inner_l2(u, xi);
}

DiagnosticsRecord sample_diagnostics(const FlowState& state, double nu) {
  DiagnosticsRecord rec;
  rec.time = state.time;
  const SpectralVectorField& u = state.u;
  const SpectralVectorField& xi = state.xi;
  const Grid& g = u.grid();

  rec.energy = 0.5 * l2_norm_sq(u);
  rec.enstrophy = 0.5 * l2_norm_sq(xi);
  rec.helicity = inner_l2(u, xi);
  rec.grad_u_sq = grad_norm_sq(u);
  rec.grad_xi_sq = grad_norm_sq(xi);

  const SpectralVectorField cu = curl(u);
  const double xin = std::sqrt(l2_norm_sq(xi));
  rec.vorticity_consistency = xin > 0.0 ? std::sqrt(l2_norm_sq(cu - xi)) / xin : 0.0;
  rec.curl_xi_dot_xi = inner_l2(curl(xi), xi);

  // grad xi : grad u via Parseval, sum_k |k|^2 Re(xi_hat . conj(u_hat))
  {
    const double vol = kTwoPi * kTwoPi * kTwoPi;
    double acc = 0.0;
    std::size_t idx = 0;
    for (int iz = 0; iz < g.n; ++iz) {
      const int kz = g.wavenumber(iz);
      for (int iy = 0; iy < g.n; ++iy) {
        const int ky = g.wavenumber(iy);
        for (int ix = 0; ix < g.n; ++ix, ++idx) {
          const int kx = g.wavenumber(ix);
          const double k2 = double(kx) * kx + double(ky) * ky + double(kz) * kz;
          for (int j = 0; j < 3; ++j) acc += k2 * (xi.at(j, idx) * std::conj(u.at(j, idx))).real();
        }
      }
    }
    rec.grad_xi_dot_grad_u = vol * acc;
  }

  // pointwise quantities: helical density, strain and Ricci quadratic forms
  const auto up = u.to_physical();
  const auto xp = xi.to_physical();
  const StrainField s = strain(u);
  std::vector<double> hd2(g.size()), squad(g.size()), ricquad(g.size()), ricu_xi(g.size()), hu2(g.size());
  double forms_gap = 0.0, forms_scale = 0.0;
  const double a = 0.5 / (nu * nu);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double ux = up[0][i], uy = up[1][i], uz = up[2][i];
    const double xx = xp[0][i], xy = xp[1][i], xz = xp[2][i];
    const double xu = ux * xx + uy * xy + uz * xz;
    const double uu = ux * ux + uy * uy + uz * uz;
    const double sx0 = s.entry(0, 0, i) * xx + s.entry(0, 1, i) * xy + s.entry(0, 2, i) * xz;
    const double sx1 = s.entry(1, 0, i) * xx + s.entry(1, 1, i) * xy + s.entry(1, 2, i) * xz;
    const double sx2 = s.entry(2, 0, i) * xx + s.entry(2, 1, i) * xy + s.entry(2, 2, i) * xz;
    const double sq = sx0 * xx + sx1 * xy + sx2 * xz;  // (S xi) . xi
    const double rq = a * xu * xu - (sq / nu);         // (RicHat xi) . xi
    const double su0 = s.entry(0, 0, i) * ux + s.entry(0, 1, i) * uy + s.entry(0, 2, i) * uz;
    const double su1 = s.entry(1, 0, i) * ux + s.entry(1, 1, i) * uy + s.entry(1, 2, i) * uz;
    const double su2 = s.entry(2, 0, i) * ux + s.entry(2, 1, i) * uy + s.entry(2, 2, i) * uz;
    const double ric_u_dot_xi = a * uu * xu - (su0 * xx + su1 * xy + su2 * xz) / nu;

    hd2[i] = xu * xu;
    squad[i] = sq;
    ricquad[i] = rq;
    ricu_xi[i] = ric_u_dot_xi;
    hu2[i] = xu * uu;

    // the two enstrophy integrands: -nu (RicHat xi).xi + (1/2nu)(xi.u)^2 vs (S xi).xi
    const double lhs = -nu * rq + 0.5 / nu * xu * xu;
    forms_gap = std::max(forms_gap, std::abs(lhs - sq));
    forms_scale = std::max(forms_scale, std::abs(sq));
  }
  rec.helical_density_sq = grid_integral(g, hd2);
  rec.strain_quad = grid_integral(g, squad);
  rec.ric_hat_quad = grid_integral(g, ricquad);
  rec.ric_hat_u_dot_xi = grid_integral(g, ricu_xi);
  rec.helicity_u2 = grid_integral(g, hu2);
  rec.enstrophy_forms_gap = forms_gap / std::max(forms_scale, 1e-14);

  rec.residual_energy = std::numeric_limits<double>::quiet_NaN();
  rec.residual_enstrophy = std::numeric_limits<double>::quiet_NaN();
  rec.residual_enstrophy_ricci = std::numeric_limits<double>::quiet_NaN();
  rec.residual_helicity = std::numeric_limits<double>::quiet_NaN();
  return rec;
}

void fill_residuals(std::vector<DiagnosticsRecord>& series, double nu, double floor) {
  if (series.size() < 3) throw std::invalid_argument("fill_residuals: need at least 3 samples");
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    const double h1 = series[i].time - series[i - 1].time;
    const double h2 = series[i + 1].time - series[i].time;
    if (std::abs(h1 - h2) > 1e-9 * std::max(h1, h2))
      throw std::invalid_argument("fill_residuals: nonuniform sample spacing");
  }
  auto norm3 = [floor](double a, double b, double c) { return std::max({std::abs(a), std::abs(b), std::abs(c), floor}); };
  for (std::size_t i = 1; i + 1 < series.size(); ++i) {
    DiagnosticsRecord& r = series[i];
    const double h = series[i + 1].time - series[i - 1].time;
    const double de = (series[i + 1].energy - series[i - 1].energy) / h;
    const double dz = (series[i + 1].enstrophy - series[i - 1].enstrophy) / h;
    const double dh = (series[i + 1].helicity - series[i - 1].helicity) / h;

    const double visc_e = nu * r.grad_u_sq;
    r.residual_energy = (de + visc_e) / norm3(de, visc_e, 0.0);

    const double visc_z = nu * r.grad_xi_sq;
    r.residual_enstrophy = (dz + visc_z - r.strain_quad) / norm3(dz, visc_z, r.strain_quad);

    const double hel_src = 0.5 / nu * r.helical_density_sq;
    const double ric_snk = nu * r.ric_hat_quad;
    r.residual_enstrophy_ricci =
        (dz + visc_z - hel_src + ric_snk) / std::max({std::abs(dz), std::abs(visc_z), std::abs(hel_src), std::abs(ric_snk), floor});

    const double t1 = nu * r.curl_xi_dot_xi;
    const double t2 = nu * r.grad_xi_dot_grad_u;
    const double t3 = nu * r.ric_hat_u_dot_xi;
    const double t4 = 0.5 / nu * r.helicity_u2;
    r.residual_helicity =
        (dh + t1 + t2 + t3 - t4) /
        std::max({std::abs(dh), std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4), floor});
  }
}

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRecord>& series) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("diagnostics: cannot open " + path);
  os << "time,energy,enstrophy,helicity,energy_residual,enstrophy_residual,helicity_residual\n";
  os.precision(15);
  for (const auto& r : series) {
    os << r.time << ',' << r.energy << ',' << r.enstrophy << ',' << r.helicity << ','
       << r.residual_energy << ',' << r.residual_enstrophy << ',' << r.residual_helicity << '\n';
  }
}

ResidualSummary summarize_residuals(const std::vector<DiagnosticsRecord>& series) {
  ResidualSummary s;
  for (const auto& r : series) {
    if (std::isfinite(r.residual_energy)) s.max_energy = std::max(s.max_energy, std::abs(r.residual_energy));
    if (std::isfinite(r.residual_enstrophy))
      s.max_enstrophy = std::max(s.max_enstrophy, std::abs(r.residual_enstrophy));
    if (std::isfinite(r.residual_enstrophy_ricci))
      s.max_enstrophy_ricci = std::max(s.max_enstrophy_ricci, std::abs(r.residual_enstrophy_ricci));
    if (std::isfinite(r.residual_helicity))
      s.max_helicity = std::max(s.max_helicity, std::abs(r.residual_helicity));
    s.max_forms_gap = std::max(s.max_forms_gap, r.enstrophy_forms_gap);
    s.max_vorticity_consistency = std::max(s.max_vorticity_consistency, r.vorticity_consistency);
  }
  return s;
}

}  // namespace nsgeo
