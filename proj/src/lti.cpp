// SPDX-License-Identifier: Apache-2.0

#include "phcenter/lti.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "phcenter/linalg.hpp"

namespace phcenter {

void SystemModel::validate() const {
  const Index n = a.rows();
  const Index m = d.rows();
  if (n < 1 || m < 1) {
    throw DimensionError("SystemModel: need n >= 1 and m >= 1");
  }
  if (a.cols() != n || b.rows() != n || b.cols() != m || c.rows() != m || c.cols() != n ||
      d.cols() != m) {
    throw DimensionError("SystemModel: inconsistent block dimensions");
  }
}

SystemModel transform(const SystemModel& model, const ComplexMatrix& t) {
  model.validate();
  if (t.rows() != model.state_dim() || t.cols() != model.state_dim()) {
    throw DimensionError("transform: T must be n x n");
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(t);
  // A T^-1 and C T^-1 via solves on the transposed system
  const ComplexMatrix t_inv = lu.inverse();
  SystemModel out;
  out.a = t * model.a * t_inv;
  out.b = t * model.b;
  out.c = model.c * t_inv;
  out.d = model.d;
  return out;
}

ComplexMatrix transfer_eval(const SystemModel& model, Complex s) {
  model.validate();
  const Index n = model.state_dim();
  const ComplexMatrix shifted = s * ComplexMatrix::Identity(n, n) - model.a;
  const ComplexMatrix z = Eigen::PartialPivLU<ComplexMatrix>(shifted).solve(model.b);
  const double residual = (shifted * z - model.b).norm();
  if (!(residual <= 1e-8 * model.b.norm())) {
    throw SingularShiftError("transfer_eval: shifted solve residual " + std::to_string(residual) +
                             " at s = (" + std::to_string(s.real()) + ", " +
                             std::to_string(s.imag()) + ")");
  }
  return model.d + model.c * z;
}

HermitianMatrix popov_eval(const SystemModel& model, double omega) {
  const ComplexMatrix t = transfer_eval(model, Complex(0.0, omega));
  return HermitianMatrix(ComplexMatrix(t.adjoint() + t));
}

namespace {

Index krylov_rank(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Index n = a.rows();
  const Index m = b.cols();
  ComplexMatrix krylov(n, n * m);
  ComplexMatrix block = b;
  for (Index k = 0; k < n; ++k) {
    krylov.block(0, k * m, n, m) = block;
    if (k + 1 < n) block = a * block;
  }
  const RealVector sv = krylov.jacobiSvd().singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double threshold = 1e-10 * sv(0);
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return rank;
}

}  // namespace

MinimalityReport is_minimal(const SystemModel& model) {
  model.validate();
  MinimalityReport report;
  report.controllable = krylov_rank(model.a, model.b) == model.state_dim();
  report.observable =
      krylov_rank(model.a.adjoint(), model.c.adjoint()) == model.state_dim();
  return report;
}

namespace {

Index svd_rank(const ComplexMatrix& m) {
  const RealVector sv = m.jacobiSvd().singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > 1e-10 * sv(0)) ++rank;
  }
  return rank;
}

}  // namespace

void validate_model(const SystemModel& model, const StructureRequirements& requirements) {
  model.validate();
  if (requirements.require_minimal) {
    const MinimalityReport report = is_minimal(model);
    if (!report.controllable) {
      throw ModelStructureError("model is not controllable");
    }
    if (!report.observable) {
      throw ModelStructureError("model is not observable");
    }
  }
  if (requirements.require_full_port_rank) {
    const Index m = model.port_dim();
    if (svd_rank(model.b) != m) {
      throw ModelStructureError("rank B < m");
    }
    if (svd_rank(model.c) != m) {
      throw ModelStructureError("rank C < m");
    }
  }
}

bool is_asymptotically_stable(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("is_asymptotically_stable: matrix must be square");
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
  return es.eigenvalues().real().maxCoeff() < -1e-10;
}

}  // namespace phcenter
