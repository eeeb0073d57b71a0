// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <complex>

#include "phcenter/errors.hpp"

namespace phcenter {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Frobenius inner product <X, Y> = Re trace(Y^H X).
inline double frobenius_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (y.adjoint() * x).trace().real();
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

inline ComplexMatrix skew_hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m - m.adjoint());
}

/// A dense Hermitian matrix. Construction symmetrizes the input and rejects
/// matrices whose deviation from Hermitian exceeds 1e-12 * max(1, ||M||_F).
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
      throw DimensionError("HermitianMatrix: matrix must be square");
    }
    const double dev = (m - m.adjoint()).norm();
    if (dev > 1e-12 * std::max(1.0, m.norm())) {
      throw NotHermitianError("HermitianMatrix: deviation from Hermitian " +
                              std::to_string(dev) + " exceeds tolerance");
    }
    m_ = hermitian_part(m);
  }

  static HermitianMatrix identity(Index n) { return HermitianMatrix(ComplexMatrix::Identity(n, n)); }
  static HermitianMatrix zero(Index n) { return HermitianMatrix(ComplexMatrix::Zero(n, n)); }

  /// Symmetrize without the deviation check; for results of algorithms that
  /// produce approximately Hermitian matrices (e.g. Riccati solutions).
  static HermitianMatrix symmetrized(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
      throw DimensionError("HermitianMatrix: matrix must be square");
    }
    HermitianMatrix h;
    h.m_ = hermitian_part(m);
    return h;
  }

  const ComplexMatrix& mat() const { return m_; }
  Index order() const { return m_.rows(); }
  double norm() const { return m_.norm(); }

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.m_ + b.m_);
  }
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.m_ - b.m_);
  }
  friend HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(s * a.m_);
  }

 private:
  ComplexMatrix m_;
};

}  // namespace phcenter
