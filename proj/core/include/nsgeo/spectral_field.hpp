#pragma once

#include <array>
#include <complex>
#include <vector>

#include "nsgeo/grid.hpp"

namespace nsgeo {

using Complex = std::complex<double>;

/// Scalar field stored as full-spectrum Fourier coefficients.
class SpectralScalarField {
 public:
  SpectralScalarField() = default;
  explicit SpectralScalarField(const Grid& g) : grid_(g), c_(g.size(), Complex{0.0, 0.0}) {}

  const Grid& grid() const { return grid_; }
  Complex& at(std::size_t i) { return c_[i]; }
  const Complex& at(std::size_t i) const { return c_[i]; }
  Complex* data() { return c_.data(); }
  const Complex* data() const { return c_.data(); }
  std::size_t size() const { return c_.size(); }

  std::vector<double> to_physical() const;
  static SpectralScalarField from_physical(const Grid& g, const std::vector<double>& values);

 private:
  Grid grid_;
  std::vector<Complex> c_;
};

/// Vector field as three full-spectrum coefficient arrays. Real-valuedness is
/// kept as an explicit Hermitian-symmetry invariant rather than by
/// half-spectrum storage.
class SpectralVectorField {
 public:
  SpectralVectorField() = default;
  explicit SpectralVectorField(const Grid& g) : grid_(g) {
    for (auto& comp : c_) comp.assign(g.size(), Complex{0.0, 0.0});
  }

  const Grid& grid() const { return grid_; }
  std::vector<Complex>& component(int j) { return c_[j]; }
  const std::vector<Complex>& component(int j) const { return c_[j]; }
  Complex& at(int j, std::size_t i) { return c_[j][i]; }
  const Complex& at(int j, std::size_t i) const { return c_[j][i]; }

  std::array<std::vector<double>, 3> to_physical() const;
  static SpectralVectorField from_physical(const Grid& g, const std::array<std::vector<double>, 3>& values);

 private:
  Grid grid_;
  std::array<std::vector<Complex>, 3> c_;
};

/// Pointwise symmetric 3x3 tensor field in physical space; six arrays in
/// (11,22,33,12,13,23) order. Used for the rate of strain and for the
/// velocity-induced Ricci field.
struct SymmetricTensorField {
  Grid grid;
  std::array<std::vector<double>, 6> comp;  // s11 s22 s33 s12 s13 s23

  explicit SymmetricTensorField(const Grid& g) : grid(g) {
    for (auto& a : comp) a.assign(g.size(), 0.0);
  }
  double entry(int i, int j, std::size_t idx) const {
    static constexpr int map[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
    return comp[map[i][j]][idx];
  }
  double& entry_ref(int i, int j, std::size_t idx) {
    static constexpr int map[3][3] = {{0, 3, 4}, {3, 1, 5}, {4, 5, 2}};
    return comp[map[i][j]][idx];
  }
};

using StrainField = SymmetricTensorField;

// ---- transforms / construction --------------------------------------------

SpectralVectorField fft_roundtrip(const SpectralVectorField& u);

/// Per-grid lookup tables for the hot multiplier loops: wavenumbers, |k|^2
/// and the dealias mask, cached per (n, dealias_fraction).
struct GridTables {
  std::vector<double> kx, ky, kz, k2;
  std::vector<unsigned char> keep;  // dealias mask
};
const GridTables& grid_tables(const Grid& g);

// ---- differential operators ------------------------------------------------

SpectralVectorField gradient(const SpectralScalarField& s);
SpectralScalarField divergence(const SpectralVectorField& u);
SpectralVectorField curl(const SpectralVectorField& u);

/// Orthogonal projection onto divergence-free fields; mean mode untouched.
SpectralVectorField leray_project(const SpectralVectorField& u);

/// De Rham-Hodge Laplacian on the flat torus restricted to divergence-free
/// fields, i.e. curl(curl(.)) realized as the |k|^2 multiplier.
/// Throws if the input is not divergence-free.
SpectralVectorField hodge_laplacian_flat(const SpectralVectorField& u);

/// Velocity from vorticity: u_hat(k) = i k x xi_hat(k) / |k|^2.
/// Requires a zero-mean, divergence-free input.
SpectralVectorField biot_savart(const SpectralVectorField& xi);

/// Rate of strain (d_i u_j + d_j u_i)/2 evaluated pointwise.
StrainField strain(const SpectralVectorField& u);

SpectralVectorField dealias(const SpectralVectorField& u);
SpectralScalarField dealias(const SpectralScalarField& s);

/// Multiplies coefficients by exp(-s |k|^2); with s = t/2 this is the heat
/// semigroup e^{-t box/2} on flat divergence-free fields.
SpectralVectorField heat_multiplier(const SpectralVectorField& u, double s);

// ---- reductions (Parseval quadrature) ---------------------------------------

double l2_norm_sq(const SpectralVectorField& u);   // integral of |u|^2
double l2_norm_sq(const SpectralScalarField& s);
double grad_norm_sq(const SpectralVectorField& u); // integral of |grad u|^2
double inner_l2(const SpectralVectorField& a, const SpectralVectorField& b);

// ---- invariant checks --------------------------------------------------------

/// max_k |k.u_hat(k)| / max_k |u_hat(k)|; zero for divergence-free fields.
double divergence_ratio(const SpectralVectorField& u);
bool is_divergence_free(const SpectralVectorField& u, double tol = 1e-12);
void require_divergence_free(const SpectralVectorField& u, const char* who);

/// max over k of |c(-k) - conj(c(k))| relative to the largest coefficient.
double hermitian_defect(const SpectralVectorField& u);
void enforce_hermitian(SpectralVectorField& u);

void zero_mean_mode(SpectralVectorField& u);
bool is_mean_free(const SpectralVectorField& u, double tol = 1e-12);

// arithmetic helpers
SpectralVectorField operator+(const SpectralVectorField& a, const SpectralVectorField& b);
SpectralVectorField operator-(const SpectralVectorField& a, const SpectralVectorField& b);
SpectralVectorField operator*(double s, const SpectralVectorField& a);
void axpy(SpectralVectorField& y, double a, const SpectralVectorField& x);  // y += a x

}  // namespace nsgeo
