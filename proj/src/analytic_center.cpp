// SPDX-License-Identifier: Apache-2.0

#include "phcenter/analytic_center.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <cmath>
#include <vector>

#include "phcenter/linalg.hpp"

namespace phcenter {

namespace {

// Orthonormal real basis of Hermitian n x n matrices (dimension n^2):
// diagonal units, then (E_ij + E_ji)/sqrt(2) and i(E_ij - E_ji)/sqrt(2).
std::vector<ComplexMatrix> hermitian_basis(Index n) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(static_cast<size_t>(n * n));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (Index i = 0; i < n; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      ComplexMatrix re = ComplexMatrix::Zero(n, n);
      re(i, j) = inv_sqrt2;
      re(j, i) = inv_sqrt2;
      basis.push_back(re);
      ComplexMatrix im = ComplexMatrix::Zero(n, n);
      im(i, j) = Complex(0.0, inv_sqrt2);
      im(j, i) = Complex(0.0, -inv_sqrt2);
      basis.push_back(im);
    }
  }
  return basis;
}

// W-increment in the direction Delta (without the leading minus sign):
//   [ A^H Delta + Delta A    Delta B ]
//   [ B^H Delta              0       ]
ComplexMatrix w_increment(const SystemModel& model, const ComplexMatrix& delta) {
  const Index n = model.state_dim();
  const Index m = model.port_dim();
  ComplexMatrix inc(n + m, n + m);
  inc.topLeftCorner(n, n) = model.a.adjoint() * delta + delta * model.a;
  inc.topRightCorner(n, m) = delta * model.b;
  inc.bottomLeftCorner(m, n) = model.b.adjoint() * delta;
  inc.bottomRightCorner(m, m).setZero();
  return inc;
}

bool feasible(const SystemModel& model, const HermitianMatrix& x, BarrierKind kind) {
  if (kind == BarrierKind::kPortHamiltonian && !is_cholesky_pd(x.mat())) return false;
  return is_cholesky_pd(assemble_w(model, x).mat());
}

}  // namespace

double barrier_value(const SystemModel& model, const HermitianMatrix& x, BarrierKind kind) {
  const HermitianMatrix w = assemble_w(model, x);
  const auto log_det_w = cholesky_log_det(w.mat());
  if (!log_det_w) {
    throw InfeasibleError("barrier_value: W(X) is not positive definite");
  }
  if (kind == BarrierKind::kStandard) return -*log_det_w;

  const auto log_det_x = cholesky_log_det(x.mat());
  if (!log_det_x) {
    throw InfeasibleError("barrier_value: X is not positive definite");
  }
  return -*log_det_w + *log_det_x;
}

HermitianMatrix barrier_gradient(const SystemModel& model, const HermitianMatrix& x,
                                 BarrierKind kind) {
  const HermitianMatrix w = assemble_w(model, x);
  Eigen::LLT<ComplexMatrix> w_llt(w.mat());
  if (w_llt.info() != Eigen::Success) {
    throw InfeasibleError("barrier_gradient: W(X) is not positive definite");
  }
  const Index n = model.state_dim();
  const ComplexMatrix w_inv =
      w_llt.solve(ComplexMatrix::Identity(w.order(), w.order()));
  const ComplexMatrix w11 = w_inv.topLeftCorner(n, n);
  const ComplexMatrix w12 = w_inv.topRightCorner(n, w.order() - n);
  const ComplexMatrix w21 = w_inv.bottomLeftCorner(w.order() - n, n);

  ComplexMatrix g = w11 * model.a.adjoint() + model.a * w11 + model.b * w21 +
                    w12 * model.b.adjoint();
  if (kind == BarrierKind::kPortHamiltonian) {
    Eigen::LLT<ComplexMatrix> x_llt(x.mat());
    if (x_llt.info() != Eigen::Success) {
      throw InfeasibleError("barrier_gradient: X is not positive definite");
    }
    g += x_llt.solve(ComplexMatrix::Identity(n, n));
  }
  return HermitianMatrix::symmetrized(g);
}

StationarityResiduals stationarity_residuals(const SystemModel& model, const HermitianMatrix& x,
                                             BarrierKind kind) {
  const KypEvaluation ev = evaluate_kyp(model, x);
  constexpr double kEps = 1e-300;

  StationarityResiduals out;
  out.ricc_pd_margin = lambda_min(ev.p.mat());

  if (kind == BarrierKind::kStandard) {
    const ComplexMatrix lyap = ev.p.mat() * ev.a_f + ev.a_f.adjoint() * ev.p.mat();
    out.lyap_residual = lyap.norm() / (ev.p.norm() * ev.a_f.norm() + kEps);
    return out;
  }

  // Port-Hamiltonian stationarity in T-coordinates, T = X^(1/2):
  //   P_T M_T + M_T^H P_T = 0 with M_T = (A_T^H - A_T) + (C_T^H + B_T) F_T.
  const ComplexMatrix t = hermitian_sqrt(x.mat());
  const SystemModel mt = transform(model, t);
  Eigen::PartialPivLU<ComplexMatrix> t_lu(t);
  // T and P are Hermitian: T^-1 P T^-1 = T^-1 (T^-1 P)^H and F T^-1 = (T^-1 F^H)^H.
  const ComplexMatrix p_t = t_lu.solve(ComplexMatrix(t_lu.solve(ev.p.mat()).adjoint()));
  const ComplexMatrix f_t = ComplexMatrix(t_lu.solve(ComplexMatrix(ev.f.adjoint()))).adjoint();
  const ComplexMatrix m_t = (mt.a.adjoint() - mt.a) + (mt.c.adjoint() + mt.b) * f_t;
  const ComplexMatrix lyap = p_t * m_t + m_t.adjoint() * p_t;
  out.lyap_residual = lyap.norm() / (p_t.norm() * m_t.norm() + kEps);
  return out;
}

namespace {

struct NewtonWorkspace {
  std::vector<ComplexMatrix> basis;
  std::vector<ComplexMatrix> increments;  // w_increment per basis element
};

// Gradient vector and Hessian Gram matrix of the barrier at X in the
// orthonormal Hermitian basis. Hessian of -log det W is the Gram matrix of
// S_k = L^-1 dW_k L^-H with W = L L^H; the port-Hamiltonian kind subtracts
// the log det X curvature, Gram of R^-1 E_k R^-H with X = R R^H.
void newton_system(const SystemModel& model, const HermitianMatrix& x, BarrierKind kind,
                   const NewtonWorkspace& ws, RealVector& grad, RealMatrix& hess) {
  const HermitianMatrix g = barrier_gradient(model, x, kind);
  const Index dim = static_cast<Index>(ws.basis.size());
  grad.resize(dim);
  for (Index k = 0; k < dim; ++k) {
    grad(k) = frobenius_inner(g.mat(), ws.basis[static_cast<size_t>(k)]);
  }

  const HermitianMatrix w = assemble_w(model, x);
  Eigen::LLT<ComplexMatrix> w_llt(w.mat());
  const ComplexMatrix l = w_llt.matrixL();
  const auto l_tri = l.triangularView<Eigen::Lower>();

  std::vector<ComplexMatrix> s_k(static_cast<size_t>(dim));
  for (Index k = 0; k < dim; ++k) {
    ComplexMatrix t = ws.increments[static_cast<size_t>(k)];
    l_tri.solveInPlace(t);
    ComplexMatrix t_adj = t.adjoint();
    l_tri.solveInPlace(t_adj);
    s_k[static_cast<size_t>(k)] = t_adj.adjoint();
  }

  hess.resize(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = i; j < dim; ++j) {
      const double v = frobenius_inner(s_k[static_cast<size_t>(i)], s_k[static_cast<size_t>(j)]);
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }

  if (kind == BarrierKind::kPortHamiltonian) {
    Eigen::LLT<ComplexMatrix> x_llt(x.mat());
    const ComplexMatrix r = x_llt.matrixL();
    const auto r_tri = r.triangularView<Eigen::Lower>();
    std::vector<ComplexMatrix> c_k(static_cast<size_t>(dim));
    for (Index k = 0; k < dim; ++k) {
      ComplexMatrix t = ws.basis[static_cast<size_t>(k)];
      r_tri.solveInPlace(t);
      ComplexMatrix t_adj = t.adjoint();
      r_tri.solveInPlace(t_adj);
      c_k[static_cast<size_t>(k)] = t_adj.adjoint();
    }
    for (Index i = 0; i < dim; ++i) {
      for (Index j = i; j < dim; ++j) {
        const double v =
            frobenius_inner(c_k[static_cast<size_t>(i)], c_k[static_cast<size_t>(j)]);
        hess(i, j) -= v;
        if (j != i) hess(j, i) -= v;
      }
    }
  }
}

// Strictly feasible point from the stabilizing solution of the shifted ARE
// Ricc(X) = eps I, extracted from the Hamiltonian of the eps-shifted problem.
// eps is backed off geometrically until the extraction succeeds and the point
// is feasible; small eps approaches X- from inside.
std::optional<HermitianMatrix> shifted_are_interior_point(const SystemModel& model,
                                                          BarrierKind kind) {
  const Index n = model.state_dim();
  const ComplexMatrix s = model.d + model.d.adjoint();
  Eigen::LDLT<ComplexMatrix> s_ldlt(hermitian_part(s));
  if (s_ldlt.info() != Eigen::Success) return std::nullopt;
  const ComplexMatrix a0 = model.a - model.b * s_ldlt.solve(model.c);
  const ComplexMatrix g = model.b * s_ldlt.solve(ComplexMatrix(model.b.adjoint()));
  const ComplexMatrix q = model.c.adjoint() * s_ldlt.solve(model.c);

  double eps = lambda_max(hermitian_part(q)) + spectral_norm(a0) + 1.0;
  for (int attempt = 0; attempt < 80; ++attempt, eps *= 0.5) {
    ComplexMatrix h(2 * n, 2 * n);
    h.topLeftCorner(n, n) = a0;
    h.topRightCorner(n, n) = -g;
    h.bottomLeftCorner(n, n) = q + eps * ComplexMatrix::Identity(n, n);
    h.bottomRightCorner(n, n) = -a0.adjoint();

    Eigen::ComplexEigenSolver<ComplexMatrix> es(h, false);
    if (!(es.eigenvalues().real().cwiseAbs().minCoeff() > 1e-8 * h.norm())) continue;

    const SchurDecomposition schur =
        ordered_schur(h, [](const Complex& z) { return z.real() < 0.0; });
    if (schur.selected != n) continue;
    const ComplexMatrix basis = schur.q.leftCols(n);
    const ComplexMatrix u1 = basis.topRows(n);
    const ComplexMatrix u2 = basis.bottomRows(n);
    if (condition_number(u1) > 1e12) continue;
    const ComplexMatrix xt =
        Eigen::PartialPivLU<ComplexMatrix>(u1.transpose()).solve(ComplexMatrix(-u2.transpose()));
    const HermitianMatrix x = HermitianMatrix::symmetrized(xt.transpose());
    if (feasible(model, x, kind)) return x;
  }
  return std::nullopt;
}

// Eigenvalue-margin feasibility for selecting a starting point: a Cholesky
// probe can succeed on numerically singular W, which would start Newton on
// the boundary wall.
bool strongly_feasible(const SystemModel& model, const HermitianMatrix& x, BarrierKind kind) {
  if (kind == BarrierKind::kPortHamiltonian && !(lambda_min(x.mat()) > 0.0)) return false;
  const RealVector ev = hermitian_eigenvalues(assemble_w(model, x).mat());
  return ev(0) > 1e-10 * std::max(ev(ev.size() - 1), 0.0);
}

HermitianMatrix starting_point(const SystemModel& model, const CenterOptions& opts,
                               BarrierKind kind) {
  switch (opts.start) {
    case CenterOptions::Start::kIdentity:
      return HermitianMatrix::identity(model.state_dim());
    case CenterOptions::Start::kGiven:
      if (!opts.initial_point) {
        throw Error("compute_center: Start::kGiven requires an initial point");
      }
      return *opts.initial_point;
    case CenterOptions::Start::kMidpoint:
    default: {
      // The Loewner midpoint of the extremal solutions: W is affine in X, so
      // W(mid) = (W(X-) + W(X+))/2 has rank at most 2m and is singular
      // whenever n > m. Collect the feasible candidates among the midpoint,
      // the identity and a shifted-ARE interior point, and start from the one
      // with the smallest barrier value.
      const ExtremalPair extremal = extremal_solutions(model);
      std::vector<HermitianMatrix> candidates;
      candidates.push_back(0.5 * (extremal.x_minus + extremal.x_plus));
      candidates.push_back(HermitianMatrix::identity(model.state_dim()));
      if (auto interior = shifted_are_interior_point(model, kind)) {
        candidates.push_back(*interior);
      }
      const HermitianMatrix* best = nullptr;
      double best_value = std::numeric_limits<double>::infinity();
      for (const HermitianMatrix& candidate : candidates) {
        if (!strongly_feasible(model, candidate, kind)) continue;
        const double value = barrier_value(model, candidate, kind);
        if (value < best_value) {
          best_value = value;
          best = &candidate;
        }
      }
      if (best != nullptr) return *best;
      return candidates.front();  // let the caller's feasibility check raise the error
    }
  }
}

}  // namespace

CenterResult compute_center(const SystemModel& model, const CenterOptions& opts) {
  const PassivityDiagnostics passivity = check_strict_passivity(model);
  if (!passivity.strict) {
    std::string clauses;
    for (const auto& c : passivity.failed_clauses) {
      if (!clauses.empty()) clauses += "; ";
      clauses += c;
    }
    throw NotStrictlyPassiveError("compute_center: model is not strictly passive (" + clauses +
                                  ")");
  }

  HermitianMatrix x = starting_point(model, opts, opts.kind);
  if (!feasible(model, x, opts.kind)) {
    throw InfeasibleError("compute_center: starting point is not in the open feasible set");
  }

  const Index n = model.state_dim();
  NewtonWorkspace ws;
  ws.basis = hermitian_basis(n);
  ws.increments.reserve(ws.basis.size());
  for (const auto& e : ws.basis) ws.increments.push_back(w_increment(model, e));

  constexpr double kArmijoC = 1e-4;
  constexpr double kBacktrackRho = 0.5;

  double value = barrier_value(model, x, opts.kind);
  RealVector grad;
  RealMatrix hess;
  CenterResult result;
  bool converged = false;
  int iter = 0;

  // One damped Newton step from the current iterate; the Hessian is
  // regularized until the factorization succeeds and the direction points
  // downhill (the port-Hamiltonian Hessian may be indefinite away from the
  // center). Returns false when the line search stalls.
  const auto try_newton_step = [&]() -> bool {
    RealVector dir;
    double tau = 0.0;
    const double hess_scale = hess.norm();
    for (int attempt = 0; attempt < 60; ++attempt) {
      RealMatrix h = hess;
      if (tau > 0.0) h += tau * RealMatrix::Identity(h.rows(), h.cols());
      Eigen::LLT<RealMatrix> llt(h);
      if (llt.info() == Eigen::Success) {
        dir = llt.solve(-grad);
        if (grad.dot(dir) < 0.0) break;
      }
      dir.resize(0);
      tau = (tau == 0.0) ? std::max(1e-12, 1e-10 * hess_scale) : 2.0 * tau;
    }
    if (dir.size() == 0) {
      dir = -grad;  // last resort: steepest descent
    }

    ComplexMatrix step = ComplexMatrix::Zero(n, n);
    for (size_t k = 0; k < ws.basis.size(); ++k) {
      step += dir(static_cast<Index>(k)) * ws.basis[k];
    }
    const double slope = grad.dot(dir);

    // Once the predicted decrease drops below the floating-point resolution
    // of the barrier value, Armijo comparisons are pure rounding noise;
    // accept the full Newton step iff it reduces the gradient norm.
    if (std::abs(slope) <= 1e-13 * (1.0 + std::abs(value))) {
      const HermitianMatrix candidate = HermitianMatrix::symmetrized(x.mat() + step);
      if (feasible(model, candidate, opts.kind) &&
          barrier_gradient(model, candidate, opts.kind).norm() < grad.norm()) {
        x = candidate;
        value = barrier_value(model, x, opts.kind);
        return true;
      }
      return false;
    }

    double alpha = 1.0;
    while (alpha > 1e-14) {
      const HermitianMatrix candidate = HermitianMatrix::symmetrized(x.mat() + alpha * step);
      if (feasible(model, candidate, opts.kind)) {
        const double candidate_value = barrier_value(model, candidate, opts.kind);
        if (candidate_value <= value + kArmijoC * alpha * slope) {
          x = candidate;
          value = candidate_value;
          return true;
        }
      }
      alpha *= kBacktrackRho;
    }
    return false;
  };

  for (; iter < opts.max_iterations; ++iter) {
    newton_system(model, x, opts.kind, ws, grad, hess);
    const double grad_norm = grad.norm();
    if (grad_norm <= opts.tolerance * (1.0 + std::abs(value))) {
      converged = true;
      break;
    }
    if (!try_newton_step()) break;  // line search stalled; report best iterate
  }

  // Polish: the loop exits wherever the gradient first crossed the threshold;
  // a couple of extra Newton steps land on the quadratic-convergence floor.
  if (converged) {
    for (int extra = 0; extra < 2; ++extra) {
      newton_system(model, x, opts.kind, ws, grad, hess);
      const double before = grad.norm();
      if (before == 0.0) break;
      const HermitianMatrix x_before = x;
      const double value_before = value;
      if (!try_newton_step()) break;
      if (!(barrier_gradient(model, x, opts.kind).norm() < before)) {
        x = x_before;
        value = value_before;
        break;
      }
    }
  }

  const KypEvaluation ev = evaluate_kyp(model, x);
  const StationarityResiduals res = stationarity_residuals(model, x, opts.kind);
  Eigen::ComplexEigenSolver<ComplexMatrix> af_eigs(ev.a_f, false);

  result.x_center = x;
  result.barrier_value = value;
  result.grad_norm = barrier_gradient(model, x, opts.kind).norm();
  result.stationarity_residual = res.lyap_residual;
  result.ricc_pd_margin = res.ricc_pd_margin;
  result.iterations = iter;
  result.converged = converged;
  result.closed_loop_eigs = af_eigs.eigenvalues();
  return result;
}

ScalarCenter scalar_center_closed_form(double a, double b, double c, double d, BarrierKind kind) {
  std::vector<std::string> failed;
  if (!(a < 0.0)) failed.push_back("a<0");
  if (!(d > 0.0)) failed.push_back("d>0");
  if (!(a * d - b * c < 0.0)) failed.push_back("det[a b; c d]<0");
  if (b == 0.0) failed.push_back("b!=0");
  if (!failed.empty()) {
    std::string msg = "scalar_center_closed_form: strict passivity conditions failed:";
    for (const auto& f : failed) msg += " " + f;
    throw NotStrictlyPassiveError(msg);
  }

  ScalarCenter out;
  if (kind == BarrierKind::kStandard) {
    out.x_star = c / b - 2.0 * d * a / (b * b);
    out.f = a / b;
    out.p = 2.0 * d * a * a / (b * b) - 2.0 * c * a / b;
  } else {
    if (c == 0.0) {
      throw InfeasibleError(
          "scalar_center_closed_form: port-Hamiltonian center |c/b| requires c != 0");
    }
    out.x_star = std::abs(c / b);
  }
  return out;
}

}  // namespace phcenter
