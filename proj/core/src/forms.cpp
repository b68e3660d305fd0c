#include "nsgeo/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace nsgeo {

Mat3 FormValue::as_matrix() const {
  if (degree != 2) throw std::invalid_argument("FormValue: as_matrix needs degree 2");
  Mat3 m = Mat3::Zero();
  m(0, 1) = c[0];
  m(1, 0) = -c[0];
  m(0, 2) = c[1];
  m(2, 0) = -c[1];
  m(1, 2) = c[2];
  m(2, 1) = -c[2];
  return m;
}

double FormValue::max_abs() const {
  if (degree == 0 || degree == 3) return std::abs(c[0]);
  return std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])});
}

FormValue contract_form(const FormValue& beta, const Mat3& T) {
  switch (beta.degree) {
    case 0:
      throw std::invalid_argument("contract_form: degree 0 has no slots");
    case 1: {
      // (beta . T)(X) = beta(T X)
      FormValue out;
      out.degree = 1;
      const Vec3 b{beta.c[0], beta.c[1], beta.c[2]};
      const Vec3 r = T.transpose() * b;
      out.c = {r[0], r[1], r[2]};
      return out;
    }
    case 2: {
      // beta(T X, Y) + beta(X, T Y) = (T^t B + B T) as an antisymmetric matrix
      const Mat3 B = beta.as_matrix();
      const Mat3 M = T.transpose() * B + B * T;
      return FormValue::two_form(M(0, 1), M(0, 2), M(1, 2));
    }
    case 3: {
      FormValue out = beta;
      out.c[0] = beta.c[0] * T.trace();
      return out;
    }
    default:
      throw std::invalid_argument("contract_form: bad degree");
  }
}

FormValue hodge_star(const FormValue& beta, int orientation) {
  const double s = orientation >= 0 ? 1.0 : -1.0;
  FormValue out;
  switch (beta.degree) {
    case 0:
      out.degree = 3;
      out.c[0] = s * beta.c[0];
      return out;
    case 3:
      out.degree = 0;
      out.c[0] = s * beta.c[0];
      return out;
    case 1:
      // *e1 = e2^e3, *e2 = -e1^e3, *e3 = e1^e2
      out.degree = 2;
      out.c = {s * beta.c[2], -s * beta.c[1], s * beta.c[0]};
      return out;
    case 2:
      // *(e1^e2) = e3, *(e1^e3) = -e2, *(e2^e3) = e1
      out.degree = 1;
      out.c = {s * beta.c[2], -s * beta.c[1], s * beta.c[0]};
      return out;
    default:
      throw std::invalid_argument("hodge_star: bad degree");
  }
}

FormValue operator-(const FormValue& a, const FormValue& b) {
  if (a.degree != b.degree) throw std::invalid_argument("FormValue: degree mismatch");
  FormValue out = a;
  for (int i = 0; i < 3; ++i) out.c[i] -= b.c[i];
  return out;
}

}  // namespace nsgeo
