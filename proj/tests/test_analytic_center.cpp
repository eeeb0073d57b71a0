// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/LU>

#include "phcenter/analytic_center.hpp"
#include "phcenter/ph_form.hpp"
#include "test_support.hpp"

using namespace phcenter;
using namespace phcenter::testing;

TEST_CASE("barrier_value scalar closed forms") {
  const SystemModel m = reference_scalar();
  // det W(3) = 8
  CHECK(barrier_value(m, scalar_x(3.0), BarrierKind::kStandard) ==
        doctest::Approx(-std::log(8.0)).epsilon(1e-12));
  // det W(1)/1 = 4
  CHECK(barrier_value(m, scalar_x(1.0), BarrierKind::kPortHamiltonian) ==
        doctest::Approx(-std::log(4.0)).epsilon(1e-12));
  CHECK_THROWS_AS(barrier_value(m, scalar_x(-1.0), BarrierKind::kStandard), InfeasibleError);
}

TEST_CASE("barrier blows up toward the boundary") {
  const SystemModel model = generate_random_ph(4, 2, 137);
  const ExtremalPair pair = extremal_solutions(model);
  CenterOptions opts;
  const CenterResult center = compute_center(model, opts);

  double previous = -std::numeric_limits<double>::infinity();
  for (const double t : {1e-2, 1e-4, 1e-6}) {
    const HermitianMatrix x = HermitianMatrix::symmetrized(
        pair.x_minus.mat() + t * (center.x_center.mat() - pair.x_minus.mat()));
    const double value = barrier_value(model, x, BarrierKind::kStandard);
    CHECK(value > previous);
    previous = value;
  }
}

TEST_CASE("barrier_gradient matches central differences") {
  const SystemModel model = generate_random_ph(4, 2, 321);
  GaussianSampler rng(322);
  const double h = 1e-5;
  for (const BarrierKind kind : {BarrierKind::kStandard, BarrierKind::kPortHamiltonian}) {
    for (int trial = 0; trial < 10; ++trial) {
      const HermitianMatrix x = HermitianMatrix::symmetrized(
          ComplexMatrix::Identity(4, 4) + 0.1 * random_unit_hermitian(4, rng));
      const ComplexMatrix direction = random_unit_hermitian(4, rng);
      const HermitianMatrix g = barrier_gradient(model, x, kind);
      const double analytic = frobenius_inner(g.mat(), direction);
      const double plus =
          barrier_value(model, HermitianMatrix::symmetrized(x.mat() + h * direction), kind);
      const double minus =
          barrier_value(model, HermitianMatrix::symmetrized(x.mat() - h * direction), kind);
      const double numeric = (plus - minus) / (2.0 * h);
      CHECK(std::abs(analytic - numeric) <= 1e-6 * (1.0 + std::abs(analytic)));
    }
  }
}

TEST_CASE("barrier_gradient vanishes at the scalar centers") {
  const SystemModel m = reference_scalar();
  CHECK(barrier_gradient(m, scalar_x(3.0), BarrierKind::kStandard).norm() <= 1e-10);
  CHECK(barrier_gradient(m, scalar_x(1.0), BarrierKind::kPortHamiltonian).norm() <= 1e-10);
}

TEST_CASE("stationarity_residuals on scalar data") {
  const SystemModel m = reference_scalar();
  // At x = 3: F = a/b = -1, A_F = 0, P = 4.
  const StationarityResiduals at_center =
      stationarity_residuals(m, scalar_x(3.0), BarrierKind::kStandard);
  CHECK(at_center.ricc_pd_margin == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(at_center.lyap_residual <= 1e-12);

  // At a Riccati solution P = 0.
  const StationarityResiduals at_boundary = stationarity_residuals(
      m, scalar_x(3.0 - 2.0 * std::sqrt(2.0)), BarrierKind::kStandard);
  CHECK(std::abs(at_boundary.ricc_pd_margin) <= 1e-10);
}

TEST_CASE("compute_center scalar standard barrier") {
  const SystemModel m = reference_scalar();
  CenterOptions opts;
  const CenterResult result = compute_center(m, opts);
  CHECK(result.converged);
  CHECK(result.x_center.mat()(0, 0).real() == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(result.grad_norm <= 1e-9 * (1.0 + std::abs(result.barrier_value)));
  CHECK(std::abs(result.closed_loop_eigs(0)) <= 1e-8);  // A_F = 0 at the center
}

TEST_CASE("compute_center scalar port-Hamiltonian barrier gives a balanced realization") {
  const SystemModel m = reference_scalar();
  CenterOptions opts;
  opts.kind = BarrierKind::kPortHamiltonian;
  const CenterResult result = compute_center(m, opts);
  CHECK(result.converged);
  CHECK(result.x_center.mat()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-8));

  const PhRealization ph = ph_in_t_coordinates(m, result.x_center);
  const SystemModel balanced = model_of(ph);
  CHECK(std::abs(balanced.b(0, 0)) == doctest::Approx(std::abs(balanced.c(0, 0))).epsilon(1e-8));
}

TEST_CASE("compute_center rejects non-strictly-passive models") {
  CHECK_THROWS_AS(compute_center(scalar_model(0.0, 1.0, 1.0, 1.0), CenterOptions{}),
                  NotStrictlyPassiveError);
}

TEST_CASE("standard center has skew-Hermitian-similar closed loop") {
  const SystemModel model = generate_random_ph(6, 3, 59);
  CenterOptions opts;
  const CenterResult result = compute_center(model, opts);
  REQUIRE(result.converged);

  const KypEvaluation ev = evaluate_kyp(model, result.x_center);
  CHECK(lambda_min(ev.p.mat()) > 0.0);
  const double lyap = (ev.p.mat() * ev.a_f + ev.a_f.adjoint() * ev.p.mat()).norm();
  CHECK(lyap <= 1e-8 * ev.p.norm() * ev.a_f.norm());

  // Closed-loop spectrum on the imaginary axis.
  const double scale = spectral_norm(ev.a_f);
  CHECK(result.closed_loop_eigs.real().cwiseAbs().maxCoeff() <= 1e-6 * scale);
}

TEST_CASE("compute_center is start-point independent") {
  const SystemModel model = generate_random_ph(5, 2, 68);
  CenterOptions midpoint;
  CenterOptions identity;
  identity.start = CenterOptions::Start::kIdentity;
  const CenterResult a = compute_center(model, midpoint);
  const CenterResult b = compute_center(model, identity);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK((a.x_center.mat() - b.x_center.mat()).norm() <= 1e-6 * a.x_center.norm());
}

TEST_CASE("barrier is midpoint convex on feasible pairs") {
  const SystemModel model = generate_random_ph(4, 2, 71);
  GaussianSampler rng(72);
  int checked = 0;
  while (checked < 10) {
    const HermitianMatrix x1 = HermitianMatrix::symmetrized(
        ComplexMatrix::Identity(4, 4) + 0.3 * random_unit_hermitian(4, rng));
    const HermitianMatrix x2 = HermitianMatrix::symmetrized(
        ComplexMatrix::Identity(4, 4) + 0.3 * random_unit_hermitian(4, rng));
    if (!membership(model, x1).in_x_pdpd || !membership(model, x2).in_x_pdpd) continue;
    const HermitianMatrix mid = HermitianMatrix::symmetrized(0.5 * (x1.mat() + x2.mat()));
    const double lhs = barrier_value(model, mid, BarrierKind::kStandard);
    const double rhs = 0.5 * (barrier_value(model, x1, BarrierKind::kStandard) +
                              barrier_value(model, x2, BarrierKind::kStandard));
    CHECK(lhs <= rhs + 1e-10);
    ++checked;
  }
}

TEST_CASE("port-Hamiltonian barrier identity against a direct determinant route") {
  const SystemModel model = generate_random_ph(4, 2, 83);
  GaussianSampler rng(84);
  for (int trial = 0; trial < 5; ++trial) {
    const HermitianMatrix x = HermitianMatrix::symmetrized(
        ComplexMatrix::Identity(4, 4) + 0.1 * random_unit_hermitian(4, rng));
    const double b_std = barrier_value(model, x, BarrierKind::kStandard);
    const double b_ph = barrier_value(model, x, BarrierKind::kPortHamiltonian);

    // Identity between the two kinds.
    const double log_det_x = *cholesky_log_det(x.mat());
    CHECK(std::abs(b_ph - (b_std + log_det_x)) <= 1e-10 * (1.0 + std::abs(b_std)));

    // Direct route: -log det of W(X) blockdiag(X^-1, I) via LU.
    const Index n = 4, m = 2;
    ComplexMatrix scaling = ComplexMatrix::Identity(n + m, n + m);
    scaling.topLeftCorner(n, n) =
        Eigen::PartialPivLU<ComplexMatrix>(x.mat()).inverse();
    const ComplexMatrix w_tilde = assemble_w(model, x).mat() * scaling;
    const Complex det = Eigen::PartialPivLU<ComplexMatrix>(w_tilde).determinant();
    CHECK(std::abs(b_ph - (-std::log(det.real()))) <= 1e-9 * (1.0 + std::abs(b_ph)));
  }
}

TEST_CASE("centers stay bracketed by the extremal solutions") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SystemModel model = generate_random_ph(4, 2, seed);
    const ExtremalPair pair = extremal_solutions(model);
    const CenterResult center = compute_center(model, CenterOptions{});
    REQUIRE(center.converged);
    CHECK(lambda_min(ComplexMatrix(center.x_center.mat() - pair.x_minus.mat())) >= -1e-8);
    CHECK(lambda_min(ComplexMatrix(pair.x_plus.mat() - center.x_center.mat())) >= -1e-8);
  }
}

TEST_CASE("stationarity residual is small at computed centers for both kinds") {
  const SystemModel model = generate_random_ph(5, 2, 90);
  for (const BarrierKind kind : {BarrierKind::kStandard, BarrierKind::kPortHamiltonian}) {
    CenterOptions opts;
    opts.kind = kind;
    const CenterResult result = compute_center(model, opts);
    REQUIRE(result.converged);
    CHECK(result.stationarity_residual <= 1e-8);
    CHECK(result.ricc_pd_margin > 0.0);
  }
}

TEST_CASE("scalar_center_closed_form values and preconditions") {
  const ScalarCenter a = scalar_center_closed_form(-1.0, 1.0, 1.0, 1.0, BarrierKind::kStandard);
  CHECK(a.x_star == doctest::Approx(3.0));
  CHECK(*a.f == doctest::Approx(-1.0));
  CHECK(*a.p == doctest::Approx(4.0));

  const ScalarCenter ph =
      scalar_center_closed_form(-1.0, 1.0, 1.0, 1.0, BarrierKind::kPortHamiltonian);
  CHECK(ph.x_star == doctest::Approx(1.0));

  const ScalarCenter b = scalar_center_closed_form(-2.0, 1.0, 1.0, 1.0, BarrierKind::kStandard);
  CHECK(b.x_star == doctest::Approx(5.0));
  CHECK(*b.f == doctest::Approx(-2.0));
  CHECK(*b.p == doctest::Approx(12.0));
  // det W(x*) = 2 d p; direct evaluation of the 2x2 determinant.
  const double det_direct = (-2.0 * -2.0 * 5.0) * 2.0 - (1.0 - 5.0) * (1.0 - 5.0);
  CHECK(det_direct == doctest::Approx(2.0 * 1.0 * *b.p));

  CHECK_THROWS_WITH_AS(scalar_center_closed_form(1.0, 1.0, 1.0, 1.0, BarrierKind::kStandard),
                       doctest::Contains("a<0"), NotStrictlyPassiveError);
}

TEST_CASE("numeric scalar centers match the closed forms on random quadruples") {
  GaussianSampler rng(2718);
  int tested = 0;
  while (tested < 100) {
    const double a = -std::exp(rng.next());
    const double d = std::exp(rng.next());
    const double b = rng.next();
    const double c = rng.next();
    if (std::abs(b) < 0.05 || std::abs(c) < 0.05) continue;
    if (!(a * d - b * c < 0.0)) continue;

    const SystemModel model = scalar_model(a, b, c, d);
    CenterOptions opts;
    const double x_std =
        compute_center(model, opts).x_center.mat()(0, 0).real();
    CHECK(std::abs(x_std - scalar_center_closed_form(a, b, c, d, BarrierKind::kStandard).x_star) <=
          1e-8 * std::max(1.0, std::abs(x_std)));

    opts.kind = BarrierKind::kPortHamiltonian;
    const double x_ph = compute_center(model, opts).x_center.mat()(0, 0).real();
    CHECK(std::abs(x_ph -
                   scalar_center_closed_form(a, b, c, d, BarrierKind::kPortHamiltonian).x_star) <=
          1e-8 * std::max(1.0, std::abs(x_ph)));
    ++tested;
  }
}
