// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phcenter/kyp.hpp"
#include "phcenter/rng.hpp"

namespace phcenter {

/// Port-Hamiltonian coefficient set for
///   x' = (J - R) Q x + (G - K) u,   y = (G + K)^H Q x + D u
/// with J skew-Hermitian, Q > 0 and [R K; K^H sym(D)] >= 0.
/// `t` records the state transformation that produced the realization
/// (identity when the realization lives in the original coordinates).
struct PhRealization {
  ComplexMatrix j;
  ComplexMatrix r;
  HermitianMatrix q;
  ComplexMatrix g;
  ComplexMatrix k;
  ComplexMatrix d;
  ComplexMatrix t;
};

/// Reassemble the state-space realization described by a PhRealization.
SystemModel model_of(const PhRealization& ph);

/// pH form in original coordinates with Q = X:
///   J = (A Q^-1 - Q^-1 A^H)/2, R = -(A Q^-1 + Q^-1 A^H)/2,
///   K = (Q^-1 C^H - B)/2,      G = (Q^-1 C^H + B)/2.
/// Requires X > 0 (NotPositiveDefiniteError) and W(X) >= 0 (InfeasibleError).
PhRealization ph_from_certificate(const SystemModel& model, const HermitianMatrix& x);

/// pH form in T-coordinates with T = X^(1/2) (Hermitian square root), Q = I:
///   A_T = T A T^-1, B_T = T B, C_T = C T^-1,
///   J_T = (A_T - A_T^H)/2, R_T = -(A_T + A_T^H)/2,
///   K_T = (C_T^H - B_T)/2, G_T = (C_T^H + B_T)/2.
PhRealization ph_in_t_coordinates(const SystemModel& model, const HermitianMatrix& x);

struct PhViolation {
  std::string condition;
  double margin = 0.0;
};

/// Empty iff the realization satisfies the pH structure constraints at the
/// stated tolerances; otherwise one entry per failed condition.
std::vector<PhViolation> validate_ph(const PhRealization& ph);

/// Random strictly passive model in pH coordinates: draw M of size
/// (n+m) x (n+m), set [R K; K^H S] = M M^H and identify
///   A = -R/2, B = -K/2, C = K^H/2, D = S/2,
/// so that W(I) = M M^H and X = I is feasible by construction. Draws are
/// repeated until lambda_min(M M^H) > 1e-8. Deterministic for fixed seed.
SystemModel generate_random_ph(Index n, Index m, std::uint64_t seed, bool complex_entries = true);

/// Same construction with a caller-owned sampler; `gram_out`, when non-null,
/// receives the accepted M M^H.
SystemModel generate_random_ph(Index n, Index m, GaussianSampler& sampler, bool complex_entries,
                               ComplexMatrix* gram_out = nullptr);

}  // namespace phcenter
