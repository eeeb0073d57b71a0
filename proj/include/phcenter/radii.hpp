// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "phcenter/kyp.hpp"

namespace phcenter {

/// Rank-1 minimal perturbation certificate. For the passivity radius,
/// `delta_t` is the structured block [-dA, -dB; dC, dD] satisfying
/// W_hat + X_hat delta + delta^H X_hat singular; for the stability radius it
/// is the A-perturbation dA with V(X) - X dA - dA^H X singular.
struct PerturbationMatrix {
  ComplexMatrix delta_t;
  double norm_fro = 0.0;
  Index rank = 1;
};

struct RadiusReport {
  double alpha = 0.0;            // sqrt(lambda_min(W_hat))
  double beta = 0.0;             // sqrt(lambda_min(X_hat^-1 W_hat X_hat^-1))
  double xi = 0.0;               // lambda_min(X_hat^-1/2 W_hat X_hat^-1/2)
  double gamma_star = 0.0;       // minimizer of lambda_max(M(gamma))
  double lambda_max_star = 0.0;  // value at the minimizer
  double lower = 0.0;            // alpha beta / 2
  double upper = 0.0;            // alpha beta / (1 + |u^H w|)
  double exact_at_gamma = 0.0;   // 1 / lambda_max_star, the X-radius itself
  double u_dot_w_abs = 0.0;
  bool unimodal = true;           // 20-point probe outcome
  bool used_grid_fallback = false;
  bool x_is_identity = false;     // X numerically equals I (pH-coordinate model)
  PerturbationMatrix delta;
};

/// lambda_max of gamma^2 Wh^-1/2 Xh^2 Wh^-1/2 + Wh^-1 / gamma^2 with
/// Wh = W(X), Xh = blockdiag(X, I_m). Requires W(X) > 0, X > 0, gamma > 0.
double m_gamma_lambda_max(const SystemModel& model, const HermitianMatrix& x, double gamma);

/// X-passivity radius: smallest ||[dA dB; dC dD]||_F making W(X) singular for
/// fixed X. Exact value 1/lambda_max at the minimizing gamma (golden-section
/// search on log gamma over [1e-6, 1e6]); bounds alpha beta / 2 and
/// alpha beta / (1 + |u^H w|). Throws NotPositiveDefiniteError /
/// InfeasibleError unless W(X) > 0 and X > 0.
RadiusReport x_passivity_radius(const SystemModel& model, const HermitianMatrix& x);

/// X-stability radius: same machinery on V(X) = -XA - A^H X with X in place
/// of X_hat; the perturbation acts on A only. Requires V(X) > 0 and X > 0.
RadiusReport x_stability_radius(const SystemModel& model, const HermitianMatrix& x);

/// Stability radius estimate min over omega of sigma_min(A - i omega I) by a
/// 401-point grid over [-10 ||A||, 10 ||A||] with golden-section refinement
/// around each local minimum. Desk-scale estimator, not a certified level-set
/// method. Throws UnstableError when A is not asymptotically stable.
double true_stability_radius(const ComplexMatrix& a);

struct CertificateConditioning {
  HermitianMatrix x_opt;
  double kappa_x = 1.0;  // condition number of X_opt
  double kappa_t = 1.0;  // sqrt(kappa_x) when commuting, else the guaranteed bound
  bool commuting = true;
};

/// Condition-number-optimal certificate within the Loewner interval
/// X- <= X <= X+. Commuting pair: simultaneous unitary diagonalization and
/// per-eigenvalue interval clamping (kappa = 1 when all intervals share a
/// point). Non-commuting: congruence from the generalized eigenproblem of
/// (X+, X-) with the same construction on the diagonals.
/// Throws OrderingError unless 0 < X- and X+ - X- >= -1e-8.
CertificateConditioning condition_optimal_certificate(const HermitianMatrix& x_minus,
                                                      const HermitianMatrix& x_plus);

}  // namespace phcenter
