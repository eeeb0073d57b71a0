// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "phcenter/lti.hpp"
#include "phcenter/ph_form.hpp"
#include "test_support.hpp"

using namespace phcenter;
using namespace phcenter::testing;

TEST_CASE("transfer_eval on the scalar reference model") {
  const SystemModel m = reference_scalar();
  // T(0) = d + cb/(0 - a) = 1 + 1/1 = 2
  CHECK(transfer_eval(m, Complex(0.0, 0.0))(0, 0).real() == doctest::Approx(2.0).epsilon(1e-14));

  // limit at infinity: T -> D
  const ComplexMatrix far = transfer_eval(m, Complex(1e8, 0.0));
  CHECK((far - m.d).norm() <= 1e-6 * m.d.norm() + 1e-6);

  SystemModel zero_c = m;
  zero_c.c.setZero();
  for (const double s : {0.0, 0.5, 10.0}) {
    CHECK((transfer_eval(zero_c, Complex(s, 0.0)) - m.d).norm() == 0.0);
  }
}

TEST_CASE("transfer_eval rejects shifts at eigenvalues") {
  const SystemModel m = reference_scalar();
  CHECK_THROWS_AS(transfer_eval(m, Complex(-1.0, 0.0)), SingularShiftError);
}

TEST_CASE("popov_eval scalar values and exact Hermitian symmetry") {
  const SystemModel m = reference_scalar();
  // Phi(0) = 2(ad - cb)/a with a=-1, b=c=d=1  ->  4
  CHECK(popov_eval(m, 0.0).mat()(0, 0).real() == doctest::Approx(4.0).epsilon(1e-12));
  // Phi(inf) = 2d = 2
  CHECK(popov_eval(m, 1e8).mat()(0, 0).real() == doctest::Approx(2.0).epsilon(1e-6));

  SystemModel no_b = m;
  no_b.b.setZero();
  for (const double w : {0.0, 1.0, 50.0}) {
    CHECK((popov_eval(no_b, w).mat() - (m.d + m.d.adjoint())).norm() == 0.0);
  }

  // Hermitian exactly, for a genuinely complex model.
  const SystemModel random = generate_random_ph(4, 2, 99);
  for (const double w : {0.0, 0.3, 2.0, -5.0}) {
    const ComplexMatrix phi = popov_eval(random, w).mat();
    CHECK((phi - phi.adjoint()).norm() == 0.0);
  }
}

TEST_CASE("popov function is PSD on the axis for passive models") {
  const SystemModel model = generate_random_ph(5, 2, 1234);
  for (const double w : {0.0, 0.1, 1.0, 10.0, -3.0}) {
    CHECK(lambda_min(popov_eval(model, w).mat()) > 0.0);
  }
}

TEST_CASE("is_minimal on hand-built cases") {
  CHECK(is_minimal(reference_scalar()).minimal());

  // A = diag(-1,-2), B = [1;0], C = [1 0]: Krylov [B AB] = [[1,-1],[0,0]], rank 1.
  SystemModel m;
  m.a = ComplexMatrix::Zero(2, 2);
  m.a(0, 0) = -1.0;
  m.a(1, 1) = -2.0;
  m.b = ComplexMatrix::Zero(2, 1);
  m.b(0, 0) = 1.0;
  m.c = ComplexMatrix::Zero(1, 2);
  m.c(0, 0) = 1.0;
  m.d = ComplexMatrix::Constant(1, 1, 1.0);
  const MinimalityReport report = is_minimal(m);
  CHECK_FALSE(report.controllable);
  CHECK_FALSE(report.observable);

  CHECK(is_minimal(generate_random_ph(6, 3, 2024)).minimal());
}

TEST_CASE("minimality is invariant under state-space transformations") {
  GaussianSampler rng(5);
  const SystemModel model = generate_random_ph(5, 2, 77);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexMatrix t =
        ComplexMatrix::Identity(5, 5) + 0.5 * rng.complex_matrix(5, 5) / std::sqrt(5.0);
    if (condition_number(t) > 1e3) continue;
    const MinimalityReport before = is_minimal(model);
    const MinimalityReport after = is_minimal(transform(model, t));
    CHECK(before.controllable == after.controllable);
    CHECK(before.observable == after.observable);
  }
}

TEST_CASE("validate_model with structural requirements") {
  StructureRequirements both{true, true};
  CHECK_NOTHROW(validate_model(reference_scalar(), both));
  CHECK_NOTHROW(validate_model(generate_random_ph(5, 2, 3), both));

  // Uncontrollable pair.
  SystemModel uncontrollable;
  uncontrollable.a = ComplexMatrix::Zero(2, 2);
  uncontrollable.a(0, 0) = -1.0;
  uncontrollable.a(1, 1) = -2.0;
  uncontrollable.b = ComplexMatrix::Zero(2, 1);
  uncontrollable.b(0, 0) = 1.0;
  uncontrollable.c = ComplexMatrix::Zero(1, 2);
  uncontrollable.c(0, 0) = 1.0;
  uncontrollable.d = ComplexMatrix::Constant(1, 1, 1.0);
  CHECK_THROWS_AS(validate_model(uncontrollable, StructureRequirements{true, false}),
                  ModelStructureError);
  CHECK_NOTHROW(validate_model(uncontrollable, StructureRequirements{false, true}));

  // Rank-deficient input map.
  SystemModel flat = generate_random_ph(3, 2, 4);
  flat.b.col(1) = flat.b.col(0);
  CHECK_THROWS_WITH_AS(validate_model(flat, StructureRequirements{false, true}),
                       doctest::Contains("rank B"), ModelStructureError);
}

TEST_CASE("is_asymptotically_stable") {
  CHECK(is_asymptotically_stable(ComplexMatrix::Constant(1, 1, -1.0)));

  ComplexMatrix rotation(2, 2);
  rotation << 0.0, 1.0, -1.0, 0.0;
  CHECK_FALSE(is_asymptotically_stable(rotation));

  // J - R with R > 0 is asymptotically stable.
  GaussianSampler rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix g = rng.complex_matrix(4, 4);
    const ComplexMatrix r = g * g.adjoint() + 0.1 * ComplexMatrix::Identity(4, 4);
    const ComplexMatrix j = skew_hermitian_part(rng.complex_matrix(4, 4));
    CHECK(is_asymptotically_stable(j - r));
  }
}

TEST_CASE("transfer function is invariant under transform") {
  const SystemModel model = generate_random_ph(4, 2, 31);
  GaussianSampler rng(32);
  const ComplexMatrix t =
      ComplexMatrix::Identity(4, 4) + 0.3 * rng.complex_matrix(4, 4) / 2.0;
  const SystemModel moved = transform(model, t);
  for (const double w : {0.0, 1.0, 10.0}) {
    const ComplexMatrix t1 = transfer_eval(model, Complex(0.0, w));
    const ComplexMatrix t2 = transfer_eval(moved, Complex(0.0, w));
    CHECK((t1 - t2).norm() <= 1e-9 * std::max(1.0, t1.norm()));
  }
}
