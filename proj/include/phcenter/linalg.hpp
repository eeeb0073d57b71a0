// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>

#include "phcenter/matrix.hpp"

namespace phcenter {

/// Eigenvalues of a Hermitian matrix, ascending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

double lambda_min(const ComplexMatrix& hermitian);
double lambda_max(const ComplexMatrix& hermitian);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

/// 2-norm condition number sigma_max / sigma_min.
double condition_number(const ComplexMatrix& m);

/// Hermitian square root of a positive definite matrix (eigendecomposition).
ComplexMatrix hermitian_sqrt(const ComplexMatrix& pd);
ComplexMatrix hermitian_inverse_sqrt(const ComplexMatrix& pd);

/// log det of a Hermitian positive definite matrix via Cholesky;
/// nullopt when the factorization fails (matrix not PD).
std::optional<double> cholesky_log_det(const ComplexMatrix& hermitian);

/// Cholesky feasibility probe.
inline bool is_cholesky_pd(const ComplexMatrix& hermitian) {
  return cholesky_log_det(hermitian).has_value();
}

/// Schur decomposition a = q t q^H with q unitary and t upper triangular,
/// reordered so that all eigenvalues satisfying `select_first` occupy the
/// leading diagonal positions of t. Returns the number of selected eigenvalues.
struct SchurDecomposition {
  ComplexMatrix t;
  ComplexMatrix q;
  Index selected = 0;
};
SchurDecomposition ordered_schur(const ComplexMatrix& a,
                                 const std::function<bool(const Complex&)>& select_first);

}  // namespace phcenter
