#pragma once

#include <array>

#include "nsgeo/metric.hpp"

namespace nsgeo {

/// Differential form value at a point in an oriented orthonormal frame.
/// Storage by degree: p=0 and p=3 one scalar; p=1 components (e1,e2,e3);
/// p=2 ordered pairs (12,13,23). Antisymmetry is exact by storage.
struct FormValue {
  int degree = 0;
  std::array<double, 3> c{0.0, 0.0, 0.0};  // c[0] holds the scalar for p=0,3

  static FormValue scalar(int degree, double v) {
    FormValue f;
    f.degree = degree;
    f.c[0] = v;
    return f;
  }
  static FormValue one_form(const Vec3& v) {
    FormValue f;
    f.degree = 1;
    f.c = {v[0], v[1], v[2]};
    return f;
  }
  static FormValue two_form(double c12, double c13, double c23) {
    FormValue f;
    f.degree = 2;
    f.c = {c12, c13, c23};
    return f;
  }

  /// Dense antisymmetric matrix of a 2-form.
  Mat3 as_matrix() const;

  double max_abs() const;
};

/// Slot-wise contraction (beta . T)(X1..Xp) = sum_s beta(X1, .., T(X_s), .., Xp)
/// with T a linear map in the same frame. Degree 0 is rejected.
FormValue contract_form(const FormValue& beta, const Mat3& T);

/// Hodge star in an oriented orthonormal 3-frame; star(star(beta)) = beta on
/// every degree. `orientation` = -1 flips the volume form.
FormValue hodge_star(const FormValue& beta, int orientation = 1);

FormValue operator-(const FormValue& a, const FormValue& b);

}  // namespace nsgeo
