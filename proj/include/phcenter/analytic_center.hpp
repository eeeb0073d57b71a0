// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "phcenter/kyp.hpp"

namespace phcenter {

/// Barrier over the interior of the KYP-LMI solution set.
///   Standard:        b(X)  = -log det W(X)
///   PortHamiltonian: bt(X) = -log det(W(X) blockdiag(X^-1, I))
///                          = -log det W(X) + log det X   (requires X > 0)
enum class BarrierKind { kStandard, kPortHamiltonian };

/// Barrier value via Cholesky log-determinants. Throws InfeasibleError when
/// W(X) (or X, for the port-Hamiltonian kind) is not positive definite.
double barrier_value(const SystemModel& model, const HermitianMatrix& x, BarrierKind kind);

/// Gradient G of the barrier in the Frobenius inner product:
/// d/dt b(X + t Delta) at t=0 equals <G, Delta> for all Hermitian Delta.
HermitianMatrix barrier_gradient(const SystemModel& model, const HermitianMatrix& x,
                                 BarrierKind kind);

struct StationarityResiduals {
  double ricc_pd_margin = 0.0;  // lambda_min(P), P = Ricc(X)
  double lyap_residual = 0.0;   // normalized kind-specific stationarity residual
};

/// Residuals of the first-order optimality system at X.
/// Standard kind: || P A_F + A_F^H P ||_F / (||P||_F ||A_F||_F + eps).
/// Port-Hamiltonian kind: the analogous T-coordinate condition with T = X^(1/2),
///   M_T = (A_T^H - A_T) + (C_T^H + B_T) F_T,  residual || P_T M_T + M_T^H P_T ||
/// normalized the same way.
StationarityResiduals stationarity_residuals(const SystemModel& model, const HermitianMatrix& x,
                                             BarrierKind kind);

struct CenterOptions {
  BarrierKind kind = BarrierKind::kStandard;
  double tolerance = 1e-9;  // relative gradient tolerance
  int max_iterations = 200;
  enum class Start { kMidpoint, kIdentity, kGiven };
  Start start = Start::kMidpoint;
  std::optional<HermitianMatrix> initial_point;  // used with Start::kGiven
};

struct CenterResult {
  HermitianMatrix x_center;
  double barrier_value = 0.0;
  double grad_norm = 0.0;
  double stationarity_residual = 0.0;
  double ricc_pd_margin = 0.0;
  int iterations = 0;
  bool converged = false;  // false: stopped at max_iterations, best iterate returned
  ComplexVector closed_loop_eigs;  // spectrum of A_F at the center
};

/// Damped Newton minimization of the chosen barrier over the open feasible set.
/// Search direction from the explicit Hessian on the real vectorization of
/// Hermitian matrices (dimension n^2), Armijo backtracking (rho = 0.5,
/// c = 1e-4) with a Cholesky feasibility guard. Default start (X- + X+)/2.
/// Throws NotStrictlyPassiveError when check_strict_passivity fails and
/// InfeasibleError when the requested start is outside the open set.
CenterResult compute_center(const SystemModel& model, const CenterOptions& opts = {});

struct ScalarCenter {
  double x_star = 0.0;
  // Closed-loop gain and Riccati value at the standard center; unset for the
  // port-Hamiltonian kind.
  std::optional<double> f;
  std::optional<double> p;
};

/// Closed-form scalar (n = m = 1, real data) analytic centers:
///   Standard:        x* = c/b - 2 d a / b^2, f = a/b, p = 2 d a^2/b^2 - 2 c a/b
///   PortHamiltonian: x* = |c/b|
/// Preconditions a < 0, d > 0, ad - bc < 0, b != 0 (strict passivity);
/// the port-Hamiltonian form additionally needs c != 0 for a positive center.
ScalarCenter scalar_center_closed_form(double a, double b, double c, double d, BarrierKind kind);

}  // namespace phcenter
