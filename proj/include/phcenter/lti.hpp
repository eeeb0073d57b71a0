// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "phcenter/matrix.hpp"

namespace phcenter {

/// Complex state-space realization
///   x' = A x + B u,   y = C x + D u
/// with n states and m ports (inputs = outputs = m).
struct SystemModel {
  ComplexMatrix a;  // n x n
  ComplexMatrix b;  // n x m
  ComplexMatrix c;  // m x n
  ComplexMatrix d;  // m x m

  Index state_dim() const { return a.rows(); }
  Index port_dim() const { return d.rows(); }

  /// Throws DimensionError unless all four blocks are consistently sized
  /// with n >= 1, m >= 1.
  void validate() const;
};

struct MinimalityReport {
  bool controllable = false;
  bool observable = false;
  bool minimal() const { return controllable && observable; }
};

struct StructureRequirements {
  bool require_minimal = false;
  bool require_full_port_rank = false;  // rank B = rank C = m
};

/// Dimension checks plus the optional structural requirements.
/// Throws ModelStructureError naming the requirement that failed.
void validate_model(const SystemModel& model, const StructureRequirements& requirements);

/// Similarity transform {TAT^-1, TB, CT^-1, D}.
SystemModel transform(const SystemModel& model, const ComplexMatrix& t);

/// Transfer function T(s) = D + C (sI - A)^-1 B, evaluated by a linear solve.
/// Throws SingularShiftError when the solve residual exceeds 1e-8 * ||B||.
ComplexMatrix transfer_eval(const SystemModel& model, Complex s);

/// Popov function on the imaginary axis: Phi(i w) = T(i w)^H + T(i w).
/// Hermitian by construction.
HermitianMatrix popov_eval(const SystemModel& model, double omega);

/// Controllability/observability via Krylov block matrices with SVD rank
/// threshold 1e-10 * sigma_max.
MinimalityReport is_minimal(const SystemModel& model);

/// True iff all eigenvalues of a have real part < -1e-10.
bool is_asymptotically_stable(const ComplexMatrix& a);

}  // namespace phcenter
