// SPDX-License-Identifier: Apache-2.0

#include "phcenter/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace phcenter {

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double lambda_min(const ComplexMatrix& hermitian) {
  return hermitian_eigenvalues(hermitian)(0);
}

double lambda_max(const ComplexMatrix& hermitian) {
  const RealVector ev = hermitian_eigenvalues(hermitian);
  return ev(ev.size() - 1);
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

double condition_number(const ComplexMatrix& m) {
  const RealVector sv = m.jacobiSvd().singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& pd) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pd);
  if (es.eigenvalues()(0) <= 0.0) {
    throw NotPositiveDefiniteError("hermitian_sqrt: matrix is not positive definite");
  }
  return es.operatorSqrt();
}

ComplexMatrix hermitian_inverse_sqrt(const ComplexMatrix& pd) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pd);
  if (es.eigenvalues()(0) <= 0.0) {
    throw NotPositiveDefiniteError("hermitian_inverse_sqrt: matrix is not positive definite");
  }
  return es.operatorInverseSqrt();
}

std::optional<double> cholesky_log_det(const ComplexMatrix& hermitian) {
  Eigen::LLT<ComplexMatrix> llt(hermitian);
  if (llt.info() != Eigen::Success) return std::nullopt;
  double log_det = 0.0;
  const auto& l = llt.matrixLLT();
  for (Index i = 0; i < l.rows(); ++i) {
    const double d = l(i, i).real();
    if (!(d > 0.0)) return std::nullopt;
    log_det += 2.0 * std::log(d);
  }
  return log_det;
}

namespace {

// Swap the diagonal entries t(k,k) and t(k+1,k+1) of an upper triangular t by a
// unitary similarity, accumulating the rotation into q. Standard adjacent-swap
// step: the rotation's first column is the (normalized) eigenvector of the
// trailing eigenvalue inside the 2x2 block.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& q, Index k) {
  const Complex l1 = t(k, k);
  const Complex l2 = t(k + 1, k + 1);
  const Complex t12 = t(k, k + 1);

  const Complex v1 = t12;
  const Complex v2 = l2 - l1;
  const double r = std::sqrt(std::norm(v1) + std::norm(v2));
  if (r == 0.0) return;  // identical eigenvalues, nothing to move

  Eigen::Matrix2cd u;
  u << v1 / r, -std::conj(v2) / r, v2 / r, std::conj(v1) / r;

  t.block(k, 0, 2, t.cols()) = u.adjoint() * t.block(k, 0, 2, t.cols());
  t.block(0, k, t.rows(), 2) = t.block(0, k, t.rows(), 2) * u;
  q.block(0, k, q.rows(), 2) = q.block(0, k, q.rows(), 2) * u;
  t(k + 1, k) = Complex(0.0, 0.0);
}

}  // namespace

SchurDecomposition ordered_schur(const ComplexMatrix& a,
                                 const std::function<bool(const Complex&)>& select_first) {
  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  if (schur.info() != Eigen::Success) {
    throw Error("ordered_schur: Schur decomposition failed to converge");
  }
  SchurDecomposition d{schur.matrixT(), schur.matrixU(), 0};
  const Index n = a.rows();

  Index front = 0;
  for (Index j = 0; j < n; ++j) {
    if (!select_first(d.t(j, j))) continue;
    for (Index i = j; i > front; --i) {
      swap_adjacent(d.t, d.q, i - 1);
    }
    ++front;
  }
  d.selected = front;
  return d;
}

}  // namespace phcenter
