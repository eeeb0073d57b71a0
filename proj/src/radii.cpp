// SPDX-License-Identifier: Apache-2.0

#include "phcenter/radii.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

#include "phcenter/linalg.hpp"

namespace phcenter {

namespace {

struct GoldenResult {
  double x = 0.0;
  double value = 0.0;
};

// Minimize a unimodal f over [a, b] to bracket width `width_tol`.
template <typename F>
GoldenResult golden_section(F&& f, double a, double b, double width_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > width_tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return (f1 <= f2) ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
}

// Decrease-then-increase check with relative tolerance 1e-12 on the differences.
bool unimodal_sequence(const std::vector<double>& values) {
  bool increasing = false;
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    const double diff = values[i + 1] - values[i];
    const double tol = 1e-12 * std::max(1.0, std::abs(values[i]));
    if (!increasing) {
      if (diff > tol) increasing = true;
    } else {
      if (diff < -tol) return false;
    }
  }
  return true;
}

// Shared core of the passivity/stability X-radius on a pair of positive
// definite Hermitian matrices (w_hat, x_hat). Returns the report with delta
// satisfying: w_hat + x_hat delta + delta^H x_hat singular.
RadiusReport radius_core(const ComplexMatrix& w_hat, const ComplexMatrix& x_hat) {
  const Index dim = w_hat.rows();
  RadiusReport report;

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> w_es(w_hat);
  const RealVector w_ev = w_es.eigenvalues();
  if (!(w_ev(0) > 0.0)) {
    throw InfeasibleError("x-radius: W-block is not positive definite");
  }
  report.alpha = std::sqrt(w_ev(0));

  const ComplexMatrix w_inv_sqrt = w_es.operatorInverseSqrt();
  const ComplexMatrix w_inv = w_inv_sqrt * w_inv_sqrt;
  const ComplexMatrix cross = w_inv_sqrt * x_hat;  // W^-1/2 X
  Eigen::JacobiSVD<ComplexMatrix> cross_svd(cross, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector sigma = cross_svd.singularValues();
  report.beta = 1.0 / sigma(0);

  const ComplexMatrix x_inv_sqrt = hermitian_inverse_sqrt(x_hat);
  report.xi = lambda_min(ComplexMatrix(x_inv_sqrt * w_hat * x_inv_sqrt));

  // |u^H w| over the lambda_min(W) eigenspace and the sigma_max left singular
  // space of W^-1/2 X; maximized when either extreme is (near-)multiple.
  std::vector<Index> u_idx;
  for (Index i = 0; i < dim; ++i) {
    if (w_ev(i) <= w_ev(0) * (1.0 + 1e-10)) u_idx.push_back(i);
  }
  std::vector<Index> w_idx;
  for (Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) >= sigma(0) * (1.0 - 1e-10)) w_idx.push_back(i);
  }
  ComplexMatrix u_basis(dim, static_cast<Index>(u_idx.size()));
  for (size_t k = 0; k < u_idx.size(); ++k) u_basis.col(static_cast<Index>(k)) = w_es.eigenvectors().col(u_idx[k]);
  ComplexMatrix w_basis(dim, static_cast<Index>(w_idx.size()));
  for (size_t k = 0; k < w_idx.size(); ++k) w_basis.col(static_cast<Index>(k)) = cross_svd.matrixU().col(w_idx[k]);
  report.u_dot_w_abs = spectral_norm(ComplexMatrix(u_basis.adjoint() * w_basis));
  report.u_dot_w_abs = std::min(report.u_dot_w_abs, 1.0);

  report.lower = 0.5 * report.alpha * report.beta;
  report.upper = report.alpha * report.beta / (1.0 + report.u_dot_w_abs);

  // lambda_max(M(gamma)) through the (n+m)-sized form
  // gamma^2 (W^-1/2 X)(X W^-1/2) + W^-1 / gamma^2.
  const ComplexMatrix quad = cross * cross.adjoint();
  const auto lam_max_of_log_gamma = [&](double t) {
    const double g2 = std::exp(2.0 * t);
    return lambda_max(ComplexMatrix(g2 * quad + w_inv / g2));
  };

  std::vector<double> probe(20);
  for (int i = 0; i < 20; ++i) {
    const double t = std::log(1e-2) + (std::log(1e2) - std::log(1e-2)) * i / 19.0;
    probe[static_cast<size_t>(i)] = lam_max_of_log_gamma(t);
  }
  report.unimodal = unimodal_sequence(probe);

  const double t_lo = std::log(1e-6);
  const double t_hi = std::log(1e6);
  GoldenResult best;
  if (report.unimodal) {
    best = golden_section(lam_max_of_log_gamma, t_lo, t_hi, 1e-10);
  } else {
    // Dense grid fallback, then local refinement around the best cell.
    report.used_grid_fallback = true;
    const int cells = 2000;
    double best_t = t_lo;
    double best_v = lam_max_of_log_gamma(t_lo);
    for (int i = 1; i <= cells; ++i) {
      const double t = t_lo + (t_hi - t_lo) * i / cells;
      const double v = lam_max_of_log_gamma(t);
      if (v < best_v) {
        best_v = v;
        best_t = t;
      }
    }
    const double h = (t_hi - t_lo) / cells;
    best = golden_section(lam_max_of_log_gamma, best_t - h, best_t + h, 1e-10);
  }
  report.gamma_star = std::exp(best.x);
  report.lambda_max_star = best.value;
  report.exact_at_gamma = 1.0 / best.value;

  // Eigenvector z = [u; v] of the full 2(n+m) matrix M(gamma*) for
  // lambda_max, with ||u||^2 = ||v||^2 = 1/2 at the minimizer. The full-size
  // eigenvectors are the images of the small-form eigenvectors y under
  // Cm = [gamma X W^-1/2; W^-1/2 / gamma], scaled by 1/sqrt(lambda).
  const double g2 = report.gamma_star * report.gamma_star;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> small_es(
      ComplexMatrix(g2 * quad + w_inv / g2));
  const RealVector small_ev = small_es.eigenvalues();
  const double top = small_ev(dim - 1);
  std::vector<Index> top_idx;
  for (Index i = 0; i < dim; ++i) {
    if (small_ev(i) >= top * (1.0 - 1e-8)) top_idx.push_back(i);
  }
  const Index k = static_cast<Index>(top_idx.size());
  ComplexMatrix z_basis(2 * dim, k);
  for (Index col = 0; col < k; ++col) {
    const ComplexVector y = small_es.eigenvectors().col(top_idx[static_cast<size_t>(col)]);
    z_basis.col(col).head(dim) = report.gamma_star * (x_hat * (w_inv_sqrt * y));
    z_basis.col(col).tail(dim) = (w_inv_sqrt * y) / report.gamma_star;
    z_basis.col(col) /= std::sqrt(top);
  }

  ComplexVector z;
  if (k == 1) {
    z = z_basis.col(0);
    z.normalize();
  } else {
    // Pick the combination with equal block norms: zero of the Hermitian form
    // Q = Zu^H Zu - Zv^H Zv over unit coefficient vectors.
    const ComplexMatrix zu = z_basis.topRows(dim);
    const ComplexMatrix zv = z_basis.bottomRows(dim);
    const ComplexMatrix q_form = zu.adjoint() * zu - zv.adjoint() * zv;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> q_es(q_form);
    const RealVector mu = q_es.eigenvalues();
    ComplexVector coeff;
    if (mu(0) >= 0.0) {
      coeff = q_es.eigenvectors().col(0);
    } else if (mu(k - 1) <= 0.0) {
      coeff = q_es.eigenvectors().col(k - 1);
    } else {
      const double theta = std::atan(std::sqrt(-mu(0) / mu(k - 1)));
      coeff = std::cos(theta) * q_es.eigenvectors().col(0) +
              std::sin(theta) * q_es.eigenvectors().col(k - 1);
    }
    z = z_basis * coeff;
    z.normalize();
  }

  ComplexVector u = z.head(dim);
  ComplexVector v = z.tail(dim);
  // At the minimizer the two blocks carry norm 1/2 each; enforce it exactly.
  u *= 1.0 / (std::sqrt(2.0) * u.norm());
  v *= 1.0 / (std::sqrt(2.0) * v.norm());

  // Sign: W_hat + X_hat delta + delta^H X_hat must become singular, which the
  // kernel argument gives for delta = -2 u v^H / lambda_max.
  report.delta.delta_t = (-2.0 / report.lambda_max_star) * (u * v.adjoint());
  report.delta.norm_fro = report.delta.delta_t.norm();
  report.delta.rank = 1;
  return report;
}

void require_pdpd(const SystemModel& model, const HermitianMatrix& x) {
  const SolutionSetMembership ms = membership(model, x);
  if (!ms.in_x_pdpd) {
    throw InfeasibleError("x-radius: requires W(X) > 0 and X > 0 (margins " +
                          std::to_string(ms.margin) + ", " + std::to_string(ms.x_margin) + ")");
  }
}

bool numerically_identity(const ComplexMatrix& x) {
  return (x - ComplexMatrix::Identity(x.rows(), x.cols())).norm() <=
         1e-12 * std::sqrt(static_cast<double>(x.rows()));
}

}  // namespace

double m_gamma_lambda_max(const SystemModel& model, const HermitianMatrix& x, double gamma) {
  require_pdpd(model, x);
  if (!(gamma > 0.0)) throw Error("m_gamma_lambda_max: gamma must be positive");
  const Index n = model.state_dim();
  const Index m = model.port_dim();
  const HermitianMatrix w = assemble_w(model, x);
  ComplexMatrix x_hat = ComplexMatrix::Identity(n + m, n + m);
  x_hat.topLeftCorner(n, n) = x.mat();

  const ComplexMatrix w_inv_sqrt = hermitian_inverse_sqrt(w.mat());
  const ComplexMatrix cross = w_inv_sqrt * x_hat;
  const double g2 = gamma * gamma;
  return lambda_max(
      ComplexMatrix(g2 * (cross * cross.adjoint()) + (w_inv_sqrt * w_inv_sqrt) / g2));
}

RadiusReport x_passivity_radius(const SystemModel& model, const HermitianMatrix& x) {
  require_pdpd(model, x);
  const Index n = model.state_dim();
  const Index m = model.port_dim();
  const HermitianMatrix w = assemble_w(model, x);
  ComplexMatrix x_hat = ComplexMatrix::Identity(n + m, n + m);
  x_hat.topLeftCorner(n, n) = x.mat();

  RadiusReport report = radius_core(w.mat(), x_hat);
  report.x_is_identity = numerically_identity(x.mat());
  return report;
}

RadiusReport x_stability_radius(const SystemModel& model, const HermitianMatrix& x) {
  model.validate();
  if (x.order() != model.state_dim()) {
    throw DimensionError("x_stability_radius: X must be n x n");
  }
  const ComplexMatrix v =
      hermitian_part(ComplexMatrix(-x.mat() * model.a - model.a.adjoint() * x.mat()));
  if (!(lambda_min(v) > 0.0) || !(lambda_min(x.mat()) > 0.0)) {
    throw InfeasibleError("x_stability_radius: requires V(X) > 0 and X > 0");
  }

  RadiusReport report = radius_core(v, x.mat());
  report.x_is_identity = numerically_identity(x.mat());
  // Perturbation enters V as V - X dA - dA^H X; flip the core's sign so the
  // stored matrix is the A-perturbation itself.
  report.delta.delta_t = -report.delta.delta_t;
  return report;
}

double true_stability_radius(const ComplexMatrix& a) {
  if (!is_asymptotically_stable(a)) {
    throw UnstableError("true_stability_radius: A is not asymptotically stable");
  }
  const Index n = a.rows();
  const auto sigma_min_at = [&](double omega) {
    const ComplexMatrix shifted = a - Complex(0.0, omega) * ComplexMatrix::Identity(n, n);
    const RealVector sv = shifted.jacobiSvd().singularValues();
    return sv(sv.size() - 1);
  };

  const double radius_bound = 10.0 * std::max(spectral_norm(a), 1e-30);
  const int points = 401;
  std::vector<double> omega(points), value(points);
  for (int i = 0; i < points; ++i) {
    omega[static_cast<size_t>(i)] = -radius_bound + 2.0 * radius_bound * i / (points - 1);
    value[static_cast<size_t>(i)] = sigma_min_at(omega[static_cast<size_t>(i)]);
  }

  double best = std::numeric_limits<double>::infinity();
  const double width_tol = 1e-9 * std::max(1.0, radius_bound / 10.0);
  for (int i = 0; i < points; ++i) {
    const bool left_ok = (i == 0) || value[static_cast<size_t>(i)] <= value[static_cast<size_t>(i - 1)];
    const bool right_ok =
        (i == points - 1) || value[static_cast<size_t>(i)] <= value[static_cast<size_t>(i + 1)];
    if (!(left_ok && right_ok)) continue;
    const double lo = omega[static_cast<size_t>(std::max(i - 1, 0))];
    const double hi = omega[static_cast<size_t>(std::min(i + 1, points - 1))];
    const GoldenResult refined = golden_section(sigma_min_at, lo, hi, width_tol);
    best = std::min(best, refined.value);
  }
  return best;
}

CertificateConditioning condition_optimal_certificate(const HermitianMatrix& x_minus,
                                                      const HermitianMatrix& x_plus) {
  if (x_minus.order() != x_plus.order()) {
    throw DimensionError("condition_optimal_certificate: order mismatch");
  }
  const Index n = x_minus.order();
  if (!(lambda_min(x_minus.mat()) > 0.0)) {
    throw OrderingError("condition_optimal_certificate: X- is not positive definite");
  }
  const double order_margin = lambda_min(ComplexMatrix(x_plus.mat() - x_minus.mat()));
  if (order_margin < -1e-8) {
    throw OrderingError("condition_optimal_certificate: X- <= X+ violated, margin " +
                        std::to_string(order_margin));
  }

  CertificateConditioning out;
  const double commutator = (x_minus.mat() * x_plus.mat() - x_plus.mat() * x_minus.mat()).norm();
  out.commuting = commutator <= 1e-10 * x_minus.norm() * x_plus.norm();

  if (out.commuting) {
    // Simultaneous unitary diagonalization: eigenbasis of X-, refined inside
    // repeated-eigenvalue groups by diagonalizing the projected X+.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_minus(x_minus.mat());
    ComplexMatrix u = es_minus.eigenvectors();
    const RealVector d_minus = es_minus.eigenvalues();
    RealVector d_plus(n);
    const double group_tol = 1e-8 * std::max(1.0, d_minus.cwiseAbs().maxCoeff());
    Index start = 0;
    while (start < n) {
      Index stop = start + 1;
      while (stop < n && d_minus(stop) - d_minus(start) <= group_tol) ++stop;
      const Index len = stop - start;
      const ComplexMatrix block =
          u.middleCols(start, len).adjoint() * x_plus.mat() * u.middleCols(start, len);
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_block(hermitian_part(block));
      u.middleCols(start, len) = u.middleCols(start, len) * es_block.eigenvectors();
      d_plus.segment(start, len) = es_block.eigenvalues();
      start = stop;
    }

    const double window_lo = d_plus.minCoeff();   // lambda_min^(+)
    const double window_hi = d_minus.maxCoeff();  // lambda_max^(-)
    if (window_hi <= window_lo) {
      const double common = 0.5 * (window_hi + window_lo);
      out.x_opt = HermitianMatrix(ComplexMatrix(common * ComplexMatrix::Identity(n, n)));
      out.kappa_x = 1.0;
      out.kappa_t = 1.0;
      return out;
    }
    RealVector chosen(n);
    for (Index i = 0; i < n; ++i) {
      const double lo = std::max(d_minus(i), window_lo);
      const double hi = std::min(std::max(d_plus(i), d_minus(i)), window_hi);
      chosen(i) = 0.5 * (lo + std::max(lo, hi));
    }
    out.x_opt = HermitianMatrix::symmetrized(u * chosen.asDiagonal() * u.adjoint());
    out.kappa_x = chosen.maxCoeff() / chosen.minCoeff();
    out.kappa_t = std::sqrt(out.kappa_x);
    return out;
  }

  // Non-commuting: congruence from the generalized eigenproblem X+ v = lambda X- v,
  // normalized so L^H X- L = I and L^H X+ L = diag(lambda).
  Eigen::GeneralizedSelfAdjointEigenSolver<ComplexMatrix> ges(x_plus.mat(), x_minus.mat());
  const ComplexMatrix l = ges.eigenvectors();
  RealVector d_plus = ges.eigenvalues().cwiseMax(1.0);  // intervals [1, lambda_i]
  const double window_lo = 1.0;                         // d_max^(-)
  const double window_hi = d_plus.minCoeff();           // d_min^(+)
  const double common = 0.5 * (window_lo + window_hi);

  const ComplexMatrix gram = l * l.adjoint();
  Eigen::LLT<ComplexMatrix> gram_llt(gram);
  const ComplexMatrix x_opt = common * gram_llt.solve(ComplexMatrix::Identity(n, n));
  out.x_opt = HermitianMatrix::symmetrized(x_opt);

  const RealVector x_opt_ev = hermitian_eigenvalues(out.x_opt.mat());
  out.kappa_x = x_opt_ev(n - 1) / x_opt_ev(0);
  const double kappa_l = condition_number(l);
  out.kappa_t = kappa_l * std::max(1.0, std::sqrt(window_lo / window_hi));
  return out;
}

}  // namespace phcenter
