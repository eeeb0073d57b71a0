// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "phcenter/analytic_center.hpp"
#include "phcenter/model_io.hpp"
#include "phcenter/ph_form.hpp"
#include "phcenter/radii.hpp"

namespace phcenter {

/// Where a subcommand takes its certificate X from.
enum class CertificateChoice { kCenter, kIdentity, kFile };

struct ReportInputs {
  std::string path;
  std::string digest;
};

nlohmann::json report_skeleton(const std::string& command, const ReportInputs& inputs);

/// check: minimality, stability, strict passivity; lists failed clauses.
nlohmann::json build_check_report(const ReportInputs& inputs, const SystemModel& model);

/// center: X_center, barrier value, residuals, closed-loop spectrum, and the
/// pH realization at the center in T-coordinates.
nlohmann::json build_center_report(const ReportInputs& inputs, const SystemModel& model,
                                   const CenterOptions& opts, const CenterResult& result);

/// radii: passivity/stability X-radius blocks, the six table columns
/// (alpha^2, beta^2, xi, alpha*beta, lambda_min(R_c), rho_stab), the minimal
/// perturbation, and both factor-2 conventions for the pH block.
nlohmann::json build_radii_report(const ReportInputs& inputs, const SystemModel& model,
                                  const HermitianMatrix& x, const std::string& at,
                                  bool want_passivity, bool want_stability);

/// generate: provenance of a freshly written model document.
nlohmann::json build_generate_report(const ReportInputs& inputs, const ModelDocument& doc,
                                     bool complex_entries);

/// scalar-demo: closed-form centers for both barriers, det identities,
/// sigma_2-based passivity radius, and numeric-vs-closed-form deltas.
nlohmann::json build_scalar_demo_report(double a, double b, double c, double d);

nlohmann::json eigenvalues_to_json(ComplexVector eigs);  // sorted by (re, im)

}  // namespace phcenter
