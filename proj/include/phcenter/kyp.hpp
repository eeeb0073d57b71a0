// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "phcenter/lti.hpp"
#include "phcenter/matrix.hpp"

namespace phcenter {

/// Everything derived from one certificate X:
///   W(X) = [ -XA - A^H X   C^H - XB ]
///          [ C - B^H X     D + D^H  ]
///   S = D + D^H,  F = S^-1 (C - B^H X),  P = Ricc(X),  A_F = A - BF.
struct KypEvaluation {
  HermitianMatrix x;
  HermitianMatrix w;   // (n+m) x (n+m)
  HermitianMatrix s;   // m x m
  ComplexMatrix f;     // m x n
  HermitianMatrix p;   // n x n, Schur complement of S in W(X)
  ComplexMatrix a_f;   // n x n
  double s_condition = 0.0;
};

HermitianMatrix assemble_w(const SystemModel& model, const HermitianMatrix& x);

/// Riccati operator Ricc(X) = -XA - A^H X - (C^H - XB) S^-1 (C - B^H X).
/// Throws SingularSError when lambda_min(S) <= 1e-12 * lambda_max(S).
HermitianMatrix riccati_residual(const SystemModel& model, const HermitianMatrix& x);

/// Full evaluation bundle (same S precondition as riccati_residual).
KypEvaluation evaluate_kyp(const SystemModel& model, const HermitianMatrix& x);

/// Hamiltonian matrix
///   H = [ A - B S^-1 C      -B S^-1 B^H        ]
///       [ C^H S^-1 C        -(A - B S^-1 C)^H  ].
ComplexMatrix hamiltonian_matrix(const SystemModel& model);

struct ExtremalPair {
  HermitianMatrix x_minus;
  HermitianMatrix x_plus;
  ComplexVector closed_loop_minus;  // spectrum of A_F(X-), open left half-plane
  ComplexVector closed_loop_plus;   // spectrum of A_F(X+), open right half-plane
};

/// Extremal Riccati solutions from the stable/antistable invariant subspaces
/// of the Hamiltonian matrix: with subspace basis [U1; U2], X = -U2 U1^-1.
/// Throws ImaginaryAxisEigenvalueError when H has eigenvalues within
/// 1e-8 * ||H|| of the imaginary axis, SubspaceExtractionError when U1 is
/// ill conditioned or the extracted X fails its residual checks.
ExtremalPair extremal_solutions(const SystemModel& model);

struct SpectralFactor {
  ComplexMatrix l;  // r x n
  ComplexMatrix m;  // r x m
  Index rank = 0;
};

/// Factor W(X) = [L M]^H [L M] with r = numerical rank of W(X)
/// (eigenvalue threshold 1e-10 * lambda_max, small negatives clamped to 0).
/// Throws NotPsdError when lambda_min(W) < -1e-10 * lambda_max.
SpectralFactor spectral_factor(const SystemModel& model, const HermitianMatrix& x);

struct SolutionSetMembership {
  bool in_x = false;       // W(X) >= 0
  bool in_x_pd = false;    // W(X) >= 0 and X > 0
  bool in_x_pdpd = false;  // W(X) > 0 and X > 0
  double margin = 0.0;     // lambda_min(W(X))
  double x_margin = 0.0;   // lambda_min(X)
};

SolutionSetMembership membership(const SystemModel& model, const HermitianMatrix& x);

struct PassivityDiagnostics {
  bool strict = false;
  bool s_positive_definite = false;
  bool asymptotically_stable = false;
  bool hamiltonian_clear_of_axis = false;
  double min_axis_distance = 0.0;  // min |Re lambda(H)|, 0 when H was not formed
  std::vector<std::string> failed_clauses;
};

/// Strict passivity test: S > 0, A asymptotically stable, and no Hamiltonian
/// eigenvalue within 1e-8 * ||H|| of the imaginary axis.
PassivityDiagnostics check_strict_passivity(const SystemModel& model);

}  // namespace phcenter
