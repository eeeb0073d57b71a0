// SPDX-License-Identifier: Apache-2.0

#include "phcenter/reports.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

#include "phcenter/linalg.hpp"

namespace phcenter {

nlohmann::json report_skeleton(const std::string& command, const ReportInputs& inputs) {
  return nlohmann::json{
      {"command", command},
      {"inputs", {{"path", inputs.path}, {"digest", inputs.digest}}},
      {"outputs", nlohmann::json::object()},
      {"tolerances", nlohmann::json::object()},
  };
}

nlohmann::json eigenvalues_to_json(ComplexVector eigs) {
  std::vector<Complex> sorted(eigs.data(), eigs.data() + eigs.size());
  std::sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  nlohmann::json out = nlohmann::json::array();
  for (const Complex& z : sorted) {
    out.push_back({{"im", z.imag()}, {"re", z.real()}});
  }
  return out;
}

nlohmann::json build_check_report(const ReportInputs& inputs, const SystemModel& model) {
  nlohmann::json report = report_skeleton("check", inputs);
  const MinimalityReport minimal = is_minimal(model);
  const PassivityDiagnostics passivity = check_strict_passivity(model);

  auto& out = report["outputs"];
  out["controllable"] = minimal.controllable;
  out["observable"] = minimal.observable;
  out["minimal"] = minimal.minimal();
  out["asymptotically_stable"] = passivity.asymptotically_stable;
  out["s_positive_definite"] = passivity.s_positive_definite;
  out["hamiltonian_clear_of_axis"] = passivity.hamiltonian_clear_of_axis;
  out["min_axis_distance"] = passivity.min_axis_distance;
  out["strictly_passive"] = passivity.strict;
  out["failed_clauses"] = passivity.failed_clauses;
  if (!minimal.minimal()) {
    out["warnings"] = nlohmann::json::array({"model is not minimal"});
  }

  report["tolerances"] = {
      {"rank_relative", 1e-10},
      {"stability_margin", 1e-10},
      {"axis_distance_relative", 1e-8},
      {"s_definiteness_relative", 1e-12},
  };
  return report;
}

nlohmann::json build_center_report(const ReportInputs& inputs, const SystemModel& model,
                                   const CenterOptions& opts, const CenterResult& result) {
  nlohmann::json report = report_skeleton("center", inputs);
  auto& out = report["outputs"];
  out["barrier"] = opts.kind == BarrierKind::kStandard ? "standard" : "ph";
  out["x_center"] = matrix_to_json(result.x_center.mat());
  out["barrier_value"] = result.barrier_value;
  out["grad_norm"] = result.grad_norm;
  out["stationarity_residual"] = result.stationarity_residual;
  out["ricc_pd_margin"] = result.ricc_pd_margin;
  out["iterations"] = result.iterations;
  out["converged"] = result.converged;
  out["closed_loop_eigs"] = eigenvalues_to_json(result.closed_loop_eigs);

  const PhRealization ph = ph_in_t_coordinates(model, result.x_center);
  out["ph_at_center"] = {
      {"J", matrix_to_json(ph.j)}, {"R", matrix_to_json(ph.r)}, {"Q", matrix_to_json(ph.q.mat())},
      {"G", matrix_to_json(ph.g)}, {"K", matrix_to_json(ph.k)}, {"D", matrix_to_json(ph.d)},
      {"T", matrix_to_json(ph.t)},
  };

  const MinimalityReport minimal = is_minimal(model);
  if (!minimal.minimal()) {
    out["warnings"] = nlohmann::json::array({"model is not minimal"});
  }

  report["tolerances"] = {
      {"gradient_relative", opts.tolerance},
      {"membership_threshold", 1e-10},
      {"max_iterations", opts.max_iterations},
  };
  return report;
}

namespace {

nlohmann::json radius_to_json(const RadiusReport& r) {
  return nlohmann::json{
      {"alpha_sq", r.alpha * r.alpha},
      {"beta_sq", r.beta * r.beta},
      {"xi", r.xi},
      {"alpha_beta", r.alpha * r.beta},
      {"gamma_star", r.gamma_star},
      {"lambda_max_star", r.lambda_max_star},
      {"exact_at_gamma", r.exact_at_gamma},
      {"lower", r.lower},
      {"upper", r.upper},
      {"u_dot_w_abs", r.u_dot_w_abs},
      {"unimodal", r.unimodal},
      {"used_grid_fallback", r.used_grid_fallback},
      {"x_is_identity", r.x_is_identity},
      {"delta_t", matrix_to_json(r.delta.delta_t)},
      {"delta_norm_fro", r.delta.norm_fro},
      {"delta_rank", r.delta.rank},
  };
}

}  // namespace

nlohmann::json build_radii_report(const ReportInputs& inputs, const SystemModel& model,
                                  const HermitianMatrix& x, const std::string& at,
                                  bool want_passivity, bool want_stability) {
  nlohmann::json report = report_skeleton("radii", inputs);
  auto& out = report["outputs"];
  out["at"] = at;
  out["x"] = matrix_to_json(x.mat());

  const Index n = model.state_dim();
  const HermitianMatrix w = assemble_w(model, x);
  const ComplexMatrix x_inv_sqrt = hermitian_inverse_sqrt(x.mat());
  ComplexMatrix xhat_inv_sqrt = ComplexMatrix::Identity(w.order(), w.order());
  xhat_inv_sqrt.topLeftCorner(n, n) = x_inv_sqrt;
  const ComplexMatrix w_t = xhat_inv_sqrt * w.mat() * xhat_inv_sqrt;  // W_T(I)
  const double lambda_min_r_c = lambda_min(ComplexMatrix(w_t.topLeftCorner(n, n)));
  const double rho_stab = true_stability_radius(model.a);

  RadiusReport passivity;
  if (want_passivity) {
    passivity = x_passivity_radius(model, x);
    out["passivity"] = radius_to_json(passivity);
    // Both factor-2 conventions: the transformed LMI block and the pH
    // dissipation block [R K; K^H sym(D)] = W_T(I) / 2.
    out["conventions"] = {
        {"lambda_min_w_t", passivity.xi},
        {"lambda_min_ph_block", 0.5 * passivity.xi},
    };
  }
  if (want_stability) {
    out["stability"] = radius_to_json(x_stability_radius(model, x));
  }

  out["lambda_min_r_c"] = lambda_min_r_c;
  out["rho_stab"] = rho_stab;
  if (want_passivity) {
    out["table"] = {
        {"alpha_sq", passivity.alpha * passivity.alpha},
        {"beta_sq", passivity.beta * passivity.beta},
        {"xi", passivity.xi},
        {"alpha_beta", passivity.alpha * passivity.beta},
        {"lambda_min_r_c", lambda_min_r_c},
        {"rho_stab", rho_stab},
    };
  }

  report["tolerances"] = {
      {"membership_threshold", 1e-10},
      {"gamma_search_log_width", 1e-10},
      {"unimodality_diff", 1e-12},
      {"stability_grid_points", 401},
      {"boundary_scale_relative", 1e-8},
  };
  return report;
}

nlohmann::json build_generate_report(const ReportInputs& inputs, const ModelDocument& doc,
                                     bool complex_entries) {
  nlohmann::json report = report_skeleton("generate", inputs);
  auto& out = report["outputs"];
  out["n"] = doc.model.state_dim();
  out["m"] = doc.model.port_dim();
  if (doc.seed) out["seed"] = *doc.seed;
  if (doc.generator) out["generator"] = *doc.generator;
  out["entries"] = complex_entries ? "complex" : "real";
  out["lambda_min_w_identity"] =
      lambda_min(assemble_w(doc.model, HermitianMatrix::identity(doc.model.state_dim())).mat());
  report["tolerances"] = {{"regeneration_threshold", 1e-8}};
  return report;
}

nlohmann::json build_scalar_demo_report(double a, double b, double c, double d) {
  ReportInputs inputs;
  inputs.path = "(inline scalar quadruple)";
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g", a, b, c, d);
  inputs.digest = content_digest(buf);
  nlohmann::json report = report_skeleton("scalar-demo", inputs);
  auto& out = report["outputs"];

  const ScalarCenter standard = scalar_center_closed_form(a, b, c, d, BarrierKind::kStandard);
  out["x_star_standard"] = standard.x_star;
  out["f"] = *standard.f;
  out["p"] = *standard.p;
  // det W(x*) = 2 d p and the 2x2 determinant at the center
  out["det_w_at_center"] = 2.0 * d * (*standard.p);
  const double det_direct = (-2.0 * a * standard.x_star) * (2.0 * d) -
                            (c - b * standard.x_star) * (c - b * standard.x_star);
  out["det_w_at_center_direct"] = det_direct;

  // sigma_2 of [a b; c d]: distance to the nearest singular 2x2 block.
  RealMatrix block(2, 2);
  block << a, b, c, d;
  const RealVector sv = block.jacobiSvd().singularValues();
  out["sigma_2"] = sv(1);
  out["distance_d"] = std::abs(d);
  out["distance_a"] = std::abs(a);
  out["rho_passivity_scalar"] = sv(1);

  // Numeric centers on the 1x1 embedding for cross-checking the closed forms.
  SystemModel model;
  model.a = ComplexMatrix::Constant(1, 1, a);
  model.b = ComplexMatrix::Constant(1, 1, b);
  model.c = ComplexMatrix::Constant(1, 1, c);
  model.d = ComplexMatrix::Constant(1, 1, d);
  CenterOptions opts;
  opts.kind = BarrierKind::kStandard;
  const CenterResult numeric_standard = compute_center(model, opts);
  out["x_star_standard_numeric"] = numeric_standard.x_center.mat()(0, 0).real();
  out["delta_standard"] =
      std::abs(out["x_star_standard_numeric"].get<double>() - standard.x_star);

  if (c != 0.0) {
    const ScalarCenter ph = scalar_center_closed_form(a, b, c, d, BarrierKind::kPortHamiltonian);
    out["x_star_ph"] = ph.x_star;
    opts.kind = BarrierKind::kPortHamiltonian;
    const CenterResult numeric_ph = compute_center(model, opts);
    out["x_star_ph_numeric"] = numeric_ph.x_center.mat()(0, 0).real();
    out["delta_ph"] = std::abs(out["x_star_ph_numeric"].get<double>() - ph.x_star);

    // Balanced realization in T-coordinates at the pH center.
    const PhRealization ph_t = ph_in_t_coordinates(model, numeric_ph.x_center);
    const SystemModel balanced = model_of(ph_t);
    out["balanced"] = {
        {"a", balanced.a(0, 0).real()},
        {"b", balanced.b(0, 0).real()},
        {"c", balanced.c(0, 0).real()},
        {"d", balanced.d(0, 0).real()},
    };
  }

  report["tolerances"] = {
      {"closed_form_vs_numeric", 1e-8},
      {"gradient_relative", 1e-9},
  };
  return report;
}

}  // namespace phcenter
