// SPDX-License-Identifier: Apache-2.0

#include "phcenter/ph_form.hpp"

#include <Eigen/Cholesky>

#include "phcenter/linalg.hpp"

namespace phcenter {

SystemModel model_of(const PhRealization& ph) {
  SystemModel model;
  model.a = (ph.j - ph.r) * ph.q.mat();
  model.b = ph.g - ph.k;
  model.c = (ph.g + ph.k).adjoint() * ph.q.mat();
  model.d = ph.d;
  model.validate();
  return model;
}

namespace {

void check_certificate(const SystemModel& model, const HermitianMatrix& x) {
  if (x.order() != model.state_dim()) {
    throw DimensionError("certificate X must be n x n");
  }
  if (!(lambda_min(x.mat()) > 0.0)) {
    throw NotPositiveDefiniteError("pH construction requires X > 0");
  }
  if (!membership(model, x).in_x) {
    throw InfeasibleError("pH construction requires W(X) >= 0");
  }
}

}  // namespace

PhRealization ph_from_certificate(const SystemModel& model, const HermitianMatrix& x) {
  model.validate();
  check_certificate(model, x);
  const Index n = model.state_dim();

  Eigen::LLT<ComplexMatrix> q_llt(x.mat());
  const ComplexMatrix q_inv = q_llt.solve(ComplexMatrix::Identity(n, n));
  const ComplexMatrix aq = model.a * q_inv;
  const ComplexMatrix qc = q_inv * model.c.adjoint();

  PhRealization ph;
  ph.q = x;
  ph.j = 0.5 * (aq - aq.adjoint());
  ph.r = -0.5 * (aq + aq.adjoint());
  ph.k = 0.5 * (qc - model.b);
  ph.g = 0.5 * (qc + model.b);
  ph.d = model.d;
  ph.t = ComplexMatrix::Identity(n, n);
  return ph;
}

PhRealization ph_in_t_coordinates(const SystemModel& model, const HermitianMatrix& x) {
  model.validate();
  check_certificate(model, x);
  const ComplexMatrix t = hermitian_sqrt(x.mat());
  const SystemModel mt = transform(model, t);

  PhRealization ph;
  ph.q = HermitianMatrix::identity(model.state_dim());
  ph.j = 0.5 * (mt.a - mt.a.adjoint());
  ph.r = -0.5 * (mt.a + mt.a.adjoint());
  ph.k = 0.5 * (mt.c.adjoint() - mt.b);
  ph.g = 0.5 * (mt.c.adjoint() + mt.b);
  ph.d = mt.d;
  ph.t = t;
  return ph;
}

std::vector<PhViolation> validate_ph(const PhRealization& ph) {
  std::vector<PhViolation> violations;

  const double skew_dev = (ph.j + ph.j.adjoint()).norm();
  if (skew_dev > 1e-10 * std::max(1.0, ph.j.norm())) {
    violations.push_back({"J skew-Hermitian", skew_dev});
  }

  const double q_min = lambda_min(ph.q.mat());
  if (!(q_min > 0.0)) {
    violations.push_back({"Q positive definite", q_min});
  }

  const Index n = ph.r.rows();
  const Index m = ph.d.rows();
  ComplexMatrix block(n + m, n + m);
  block.topLeftCorner(n, n) = ph.r;
  block.topRightCorner(n, m) = ph.k;
  block.bottomLeftCorner(m, n) = ph.k.adjoint();
  block.bottomRightCorner(m, m) = hermitian_part(ph.d);
  const double block_min = lambda_min(hermitian_part(block));
  const double scale = std::max(1.0, block.norm());
  if (block_min < -1e-10 * scale) {
    violations.push_back({"[R K; K^H sym(D)] positive semidefinite", block_min});
  }
  return violations;
}

SystemModel generate_random_ph(Index n, Index m, GaussianSampler& sampler, bool complex_entries,
                               ComplexMatrix* gram_out) {
  if (n < 1 || m < 1) {
    throw DimensionError("generate_random_ph: need n >= 1, m >= 1");
  }
  ComplexMatrix gram;
  while (true) {
    const ComplexMatrix factor = complex_entries ? sampler.complex_matrix(n + m, n + m)
                                                 : sampler.real_matrix(n + m, n + m);
    gram = factor * factor.adjoint();
    if (lambda_min(hermitian_part(gram)) > 1e-8) break;
  }
  if (gram_out != nullptr) *gram_out = gram;

  SystemModel model;
  const ComplexMatrix r = gram.topLeftCorner(n, n);
  const ComplexMatrix k = gram.topRightCorner(n, m);
  const ComplexMatrix s = gram.bottomRightCorner(m, m);
  model.a = -0.5 * r;
  model.b = -0.5 * k;
  model.c = 0.5 * k.adjoint();
  model.d = 0.5 * s;
  return model;
}

SystemModel generate_random_ph(Index n, Index m, std::uint64_t seed, bool complex_entries) {
  GaussianSampler sampler(seed);
  return generate_random_ph(n, m, sampler, complex_entries, nullptr);
}

}  // namespace phcenter
