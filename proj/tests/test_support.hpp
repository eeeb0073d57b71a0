// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <doctest.h>

#include "phcenter/linalg.hpp"
#include "phcenter/lti.hpp"
#include "phcenter/rng.hpp"

namespace phcenter::testing {

/// Scalar model {a, b, c, d} embedded as a 1x1 complex system.
inline SystemModel scalar_model(double a, double b, double c, double d) {
  SystemModel m;
  m.a = ComplexMatrix::Constant(1, 1, a);
  m.b = ComplexMatrix::Constant(1, 1, b);
  m.c = ComplexMatrix::Constant(1, 1, c);
  m.d = ComplexMatrix::Constant(1, 1, d);
  return m;
}

inline SystemModel reference_scalar() { return scalar_model(-1.0, 1.0, 1.0, 1.0); }

inline HermitianMatrix scalar_x(double x) {
  return HermitianMatrix(ComplexMatrix::Constant(1, 1, x));
}

/// Random Hermitian matrix with unit Frobenius norm.
inline ComplexMatrix random_unit_hermitian(Index n, GaussianSampler& rng) {
  const ComplexMatrix g = rng.complex_matrix(n, n);
  ComplexMatrix h = hermitian_part(g);
  return h / h.norm();
}

inline bool matrix_close(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return (a - b).norm() <= tol;
}

}  // namespace phcenter::testing
