// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "phcenter/linalg.hpp"
#include "phcenter/rng.hpp"
#include "test_support.hpp"

using namespace phcenter;

TEST_CASE("HermitianMatrix symmetrizes and rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << Complex(1.0, 0.0), Complex(2.0, 1.0), Complex(2.0, -1.0), Complex(3.0, 0.0);
  const HermitianMatrix h(m);
  CHECK((h.mat() - h.mat().adjoint()).norm() == 0.0);

  ComplexMatrix bad = m;
  bad(0, 1) = Complex(5.0, 0.0);
  CHECK_THROWS_AS(HermitianMatrix{bad}, NotHermitianError);
  CHECK_NOTHROW(HermitianMatrix::symmetrized(bad));
}

TEST_CASE("cholesky_log_det matches direct determinant") {
  GaussianSampler rng(7);
  const ComplexMatrix g = rng.complex_matrix(5, 5);
  const ComplexMatrix pd = g * g.adjoint() + 5.0 * ComplexMatrix::Identity(5, 5);
  const auto log_det = cholesky_log_det(pd);
  REQUIRE(log_det.has_value());
  const double direct = std::log(pd.determinant().real());
  CHECK(*log_det == doctest::Approx(direct).epsilon(1e-12));

  CHECK_FALSE(cholesky_log_det(ComplexMatrix(-ComplexMatrix::Identity(3, 3))).has_value());
}

TEST_CASE("hermitian square roots") {
  GaussianSampler rng(11);
  const ComplexMatrix g = rng.complex_matrix(4, 4);
  const ComplexMatrix pd = g * g.adjoint() + ComplexMatrix::Identity(4, 4);
  const ComplexMatrix s = hermitian_sqrt(pd);
  CHECK((s * s - pd).norm() <= 1e-12 * pd.norm());
  const ComplexMatrix si = hermitian_inverse_sqrt(pd);
  CHECK((s * si - ComplexMatrix::Identity(4, 4)).norm() <= 1e-12);
}

TEST_CASE("ordered_schur moves selected eigenvalues to the front") {
  GaussianSampler rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Index n = 8;
    const ComplexMatrix a = rng.complex_matrix(n, n);
    const auto select = [](const Complex& z) { return z.real() < 0.0; };
    const SchurDecomposition d = ordered_schur(a, select);

    // Unitary factor, triangular T, and a faithful decomposition.
    CHECK((d.q.adjoint() * d.q - ComplexMatrix::Identity(n, n)).norm() <= 1e-12 * std::sqrt(n));
    CHECK((d.q * d.t * d.q.adjoint() - a).norm() <= 1e-11 * std::max(1.0, a.norm()));
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < i; ++j) CHECK(std::abs(d.t(i, j)) <= 1e-12 * a.norm());

    // Selected eigenvalues lead.
    for (Index i = 0; i < d.selected; ++i) CHECK(select(d.t(i, i)));
    for (Index i = d.selected; i < n; ++i) CHECK_FALSE(select(d.t(i, i)));

    // Eigenvalues preserved as a multiset (greedy matching).
    Eigen::ComplexEigenSolver<ComplexMatrix> es(a, false);
    std::vector<Complex> expected(es.eigenvalues().data(), es.eigenvalues().data() + n);
    for (Index i = 0; i < n; ++i) {
      const Complex lambda = d.t(i, i);
      auto best = expected.begin();
      for (auto it = expected.begin(); it != expected.end(); ++it) {
        if (std::abs(*it - lambda) < std::abs(*best - lambda)) best = it;
      }
      CHECK(std::abs(*best - lambda) <= 1e-8 * std::max(1.0, a.norm()));
      expected.erase(best);
    }

    // Leading columns of Q span an invariant subspace.
    const Index k = d.selected;
    if (k > 0) {
      const ComplexMatrix q1 = d.q.leftCols(k);
      const ComplexMatrix t11 = d.t.topLeftCorner(k, k);
      CHECK((a * q1 - q1 * t11).norm() <= 1e-10 * std::max(1.0, a.norm()));
    }
  }
}

TEST_CASE("GaussianSampler is deterministic and roughly standard") {
  GaussianSampler a(42);
  GaussianSampler b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  GaussianSampler rng(1);
  double sum = 0.0, sum_sq = 0.0;
  const int samples = 20000;
  for (int i = 0; i < samples; ++i) {
    const double v = rng.next();
    sum += v;
    sum_sq += v * v;
  }
  CHECK(std::abs(sum / samples) < 0.05);
  CHECK(sum_sq / samples == doctest::Approx(1.0).epsilon(0.05));
}
