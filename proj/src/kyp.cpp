// SPDX-License-Identifier: Apache-2.0

#include "phcenter/kyp.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "phcenter/linalg.hpp"

namespace phcenter {

namespace {

void check_certificate_dims(const SystemModel& model, const HermitianMatrix& x) {
  model.validate();
  if (x.order() != model.state_dim()) {
    throw DimensionError("certificate X must be n x n");
  }
}

/// S = D + D^H with its positive definiteness verified; throws SingularSError.
HermitianMatrix checked_s(const SystemModel& model, double* condition = nullptr) {
  const HermitianMatrix s(ComplexMatrix(model.d + model.d.adjoint()));
  const RealVector ev = hermitian_eigenvalues(s.mat());
  const double lo = ev(0);
  const double hi = ev(ev.size() - 1);
  if (!(lo > 1e-12 * std::max(hi, 0.0))) {
    throw SingularSError("S = D + D^H is singular or indefinite (lambda_min = " +
                         std::to_string(lo) + ")");
  }
  if (condition != nullptr) *condition = hi / lo;
  return s;
}

}  // namespace

HermitianMatrix assemble_w(const SystemModel& model, const HermitianMatrix& x) {
  check_certificate_dims(model, x);
  const Index n = model.state_dim();
  const Index m = model.port_dim();
  const ComplexMatrix& xm = x.mat();
  ComplexMatrix w(n + m, n + m);
  w.topLeftCorner(n, n) = -xm * model.a - model.a.adjoint() * xm;
  w.topRightCorner(n, m) = model.c.adjoint() - xm * model.b;
  w.bottomLeftCorner(m, n) = model.c - model.b.adjoint() * xm;
  w.bottomRightCorner(m, m) = model.d + model.d.adjoint();
  return HermitianMatrix(w);
}

HermitianMatrix riccati_residual(const SystemModel& model, const HermitianMatrix& x) {
  return evaluate_kyp(model, x).p;
}

KypEvaluation evaluate_kyp(const SystemModel& model, const HermitianMatrix& x) {
  check_certificate_dims(model, x);
  KypEvaluation ev;
  ev.x = x;
  ev.w = assemble_w(model, x);
  ev.s = checked_s(model, &ev.s_condition);

  const ComplexMatrix rhs = model.c - model.b.adjoint() * x.mat();
  // LDLT avoids square-root rounding; scalar cases come out exact.
  ev.f = Eigen::LDLT<ComplexMatrix>(ev.s.mat()).solve(rhs);
  ev.a_f = model.a - model.b * ev.f;

  const ComplexMatrix p = -x.mat() * model.a - model.a.adjoint() * x.mat() -
                          ev.f.adjoint() * ev.s.mat() * ev.f;
  ev.p = HermitianMatrix::symmetrized(p);
  return ev;
}

ComplexMatrix hamiltonian_matrix(const SystemModel& model) {
  model.validate();
  const HermitianMatrix s = checked_s(model);
  const Index n = model.state_dim();

  Eigen::LDLT<ComplexMatrix> s_ldlt(s.mat());
  const ComplexMatrix s_inv_c = s_ldlt.solve(model.c);
  const ComplexMatrix s_inv_bh = s_ldlt.solve(ComplexMatrix(model.b.adjoint()));
  const ComplexMatrix a0 = model.a - model.b * s_inv_c;

  ComplexMatrix h(2 * n, 2 * n);
  h.topLeftCorner(n, n) = a0;
  h.topRightCorner(n, n) = -model.b * s_inv_bh;
  h.bottomLeftCorner(n, n) = model.c.adjoint() * s_inv_c;
  h.bottomRightCorner(n, n) = -a0.adjoint();
  return h;
}

namespace {

struct SubspaceSolution {
  HermitianMatrix x;
  ComplexVector closed_loop;
};

// X from an n-dimensional invariant subspace of H selected by `keep`:
// basis [U1; U2], X = -U2 U1^-1, Hermitian-symmetrized.
SubspaceSolution solve_from_subspace(const ComplexMatrix& h, Index n,
                                     const std::function<bool(const Complex&)>& keep,
                                     const char* which) {
  const SchurDecomposition schur = ordered_schur(h, keep);
  if (schur.selected != n) {
    throw SubspaceExtractionError(std::string("extremal_solutions: expected ") +
                                  std::to_string(n) + " " + which +
                                  " eigenvalues, found " + std::to_string(schur.selected));
  }
  const ComplexMatrix basis = schur.q.leftCols(n);
  const ComplexMatrix u1 = basis.topRows(n);
  const ComplexMatrix u2 = basis.bottomRows(n);

  if (condition_number(u1) > 1e12) {
    throw SubspaceExtractionError(std::string("extremal_solutions: U1 block for the ") + which +
                                  " subspace is numerically singular");
  }
  // X U1 = -U2  =>  U1^T X^T = -U2^T
  const ComplexMatrix xt =
      Eigen::PartialPivLU<ComplexMatrix>(u1.transpose()).solve(ComplexMatrix(-u2.transpose()));
  const ComplexMatrix x = xt.transpose();
  const double asym = (x - x.adjoint()).norm();
  if (!(asym <= 1e-6 * std::max(1.0, x.norm()))) {
    throw SubspaceExtractionError(std::string("extremal_solutions: ") + which +
                                  " solution deviates from Hermitian by " + std::to_string(asym));
  }
  SubspaceSolution sol;
  sol.x = HermitianMatrix::symmetrized(x);
  sol.closed_loop = ComplexVector(schur.t.topLeftCorner(n, n).diagonal());
  return sol;
}

}  // namespace

ExtremalPair extremal_solutions(const SystemModel& model) {
  const ComplexMatrix h = hamiltonian_matrix(model);
  const Index n = model.state_dim();
  const double h_scale = h.norm();

  Eigen::ComplexEigenSolver<ComplexMatrix> es(h, false);
  const double min_re = es.eigenvalues().real().cwiseAbs().minCoeff();
  if (!(min_re > 1e-8 * h_scale)) {
    throw ImaginaryAxisEigenvalueError(
        "extremal_solutions: Hamiltonian eigenvalue within 1e-8*||H|| of the imaginary axis "
        "(system not strictly passive)");
  }

  ExtremalPair pair;
  auto stable = solve_from_subspace(h, n, [](const Complex& z) { return z.real() < 0.0; }, "stable");
  auto antistable =
      solve_from_subspace(h, n, [](const Complex& z) { return z.real() > 0.0; }, "antistable");
  pair.x_minus = stable.x;
  pair.x_plus = antistable.x;
  pair.closed_loop_minus = stable.closed_loop;
  pair.closed_loop_plus = antistable.closed_loop;

  // Contract checks before returning: Loewner ordering, Riccati residuals,
  // closed-loop spectra in the open half-planes.
  const double order_margin = lambda_min(pair.x_plus.mat() - pair.x_minus.mat());
  if (!(order_margin >= -1e-8)) {
    throw SubspaceExtractionError("extremal_solutions: ordering X- <= X+ violated, margin " +
                                  std::to_string(order_margin));
  }
  const double a_scale = model.a.norm();
  for (const auto* sol : {&pair.x_minus, &pair.x_plus}) {
    const double res = riccati_residual(model, *sol).norm();
    if (!(res <= 1e-6 * std::max(1.0, sol->norm() * a_scale))) {
      throw SubspaceExtractionError("extremal_solutions: Riccati residual " +
                                    std::to_string(res) + " above tolerance");
    }
  }
  if (!(pair.closed_loop_minus.real().maxCoeff() < 0.0) ||
      !(pair.closed_loop_plus.real().minCoeff() > 0.0)) {
    throw SubspaceExtractionError("extremal_solutions: closed-loop spectra not strictly split");
  }
  return pair;
}

SpectralFactor spectral_factor(const SystemModel& model, const HermitianMatrix& x) {
  const HermitianMatrix w = assemble_w(model, x);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(w.mat());
  const RealVector ev = es.eigenvalues();
  const double top = std::max(ev(ev.size() - 1), 0.0);
  if (ev(0) < -1e-10 * std::max(top, 1e-300)) {
    throw NotPsdError("spectral_factor: W(X) has eigenvalue " + std::to_string(ev(0)) +
                      ", not PSD within tolerance");
  }

  const double threshold = 1e-10 * top;
  std::vector<Index> kept;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > threshold) kept.push_back(i);
  }

  const Index n = model.state_dim();
  const Index m = model.port_dim();
  const Index r = static_cast<Index>(kept.size());
  ComplexMatrix factor(r, n + m);
  for (Index row = 0; row < r; ++row) {
    const Index i = kept[static_cast<size_t>(row)];
    factor.row(row) = std::sqrt(ev(i)) * es.eigenvectors().col(i).adjoint();
  }

  SpectralFactor out;
  out.l = factor.leftCols(n);
  out.m = factor.rightCols(m);
  out.rank = r;
  return out;
}

SolutionSetMembership membership(const SystemModel& model, const HermitianMatrix& x) {
  const HermitianMatrix w = assemble_w(model, x);
  SolutionSetMembership ms;
  ms.margin = lambda_min(w.mat());
  ms.x_margin = lambda_min(x.mat());
  ms.in_x = ms.margin >= -1e-10;
  ms.in_x_pd = ms.in_x && ms.x_margin > 1e-10;
  ms.in_x_pdpd = ms.margin > 1e-10 && ms.x_margin > 1e-10;
  return ms;
}

PassivityDiagnostics check_strict_passivity(const SystemModel& model) {
  model.validate();
  PassivityDiagnostics diag;

  const HermitianMatrix s(ComplexMatrix(model.d + model.d.adjoint()));
  const RealVector s_ev = hermitian_eigenvalues(s.mat());
  diag.s_positive_definite = s_ev(0) > 1e-12 * std::max(s_ev(s_ev.size() - 1), 0.0);
  if (!diag.s_positive_definite) diag.failed_clauses.push_back("S positive definite");

  diag.asymptotically_stable = is_asymptotically_stable(model.a);
  if (!diag.asymptotically_stable) diag.failed_clauses.push_back("asymptotic stability");

  if (diag.s_positive_definite) {
    const ComplexMatrix h = hamiltonian_matrix(model);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(h, false);
    diag.min_axis_distance = es.eigenvalues().real().cwiseAbs().minCoeff();
    diag.hamiltonian_clear_of_axis = diag.min_axis_distance > 1e-8 * h.norm();
  } else {
    diag.hamiltonian_clear_of_axis = false;  // H cannot be formed without S^-1
  }
  if (!diag.hamiltonian_clear_of_axis) {
    diag.failed_clauses.push_back("Hamiltonian imaginary-axis eigenvalues");
  }

  diag.strict = diag.s_positive_definite && diag.asymptotically_stable &&
                diag.hamiltonian_clear_of_axis;
  return diag;
}

}  // namespace phcenter
