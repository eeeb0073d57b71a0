// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "phcenter/linalg.hpp"
#include "phcenter/reports.hpp"

namespace {

using namespace phcenter;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailed = 1;
constexpr int kExitParseError = 2;
constexpr int kExitDimensionError = 3;

struct OutputOptions {
  bool json = false;
  bool no_timestamp = false;
};

double default_tolerance() {
  if (const char* env = std::getenv("PHCENTER_TOL")) {
    try {
      const double v = std::stod(env);
      if (v > 0.0) return v;
    } catch (...) {
    }
    std::cerr << "warning: ignoring invalid PHCENTER_TOL value\n";
  }
  return 1e-9;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ReportInputs inputs_for(const std::string& path) {
  ReportInputs inputs;
  inputs.path = path;
  inputs.digest = content_digest(read_file(path));
  return inputs;
}

void emit(nlohmann::json report, const OutputOptions& opts, double wall_ms,
          const std::string& human_summary) {
  if (!opts.no_timestamp) report["wall_time_ms"] = wall_ms;
  if (opts.json) {
    std::cout << canonical_dump(report) << "\n";
  } else {
    std::cout << human_summary;
  }
}

std::string format_matrix(const ComplexMatrix& m, const std::string& name) {
  std::ostringstream ss;
  ss << name << " =\n";
  for (Index i = 0; i < m.rows(); ++i) {
    ss << "  ";
    for (Index j = 0; j < m.cols(); ++j) {
      const Complex z = m(i, j);
      char buf[80];
      std::snprintf(buf, sizeof(buf), "%+.6e%+.6ei  ", z.real(), z.imag());
      ss << buf;
    }
    ss << "\n";
  }
  return ss.str();
}

HermitianMatrix certificate_from_file(const std::string& path, Index n) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  const ComplexMatrix x = matrix_from_json(j, "X");
  if (x.rows() != n || x.cols() != n) {
    throw DimensionError("certificate in " + path + " must be n x n");
  }
  return HermitianMatrix(x);
}

int run_check(const std::string& path, const OutputOptions& out_opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const ReportInputs inputs = inputs_for(path);
  const ModelDocument doc = load_model(path);
  nlohmann::json report = build_check_report(inputs, doc.model);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream human;
  const auto& o = report["outputs"];
  human << "check: " << path << "\n"
        << "  controllable:          " << (o["controllable"].get<bool>() ? "yes" : "no") << "\n"
        << "  observable:            " << (o["observable"].get<bool>() ? "yes" : "no") << "\n"
        << "  asymptotically stable: " << (o["asymptotically_stable"].get<bool>() ? "yes" : "no")
        << "\n"
        << "  S positive definite:   " << (o["s_positive_definite"].get<bool>() ? "yes" : "no")
        << "\n"
        << "  strictly passive:      " << (o["strictly_passive"].get<bool>() ? "yes" : "no")
        << "\n";
  for (const auto& clause : o["failed_clauses"]) {
    human << "  failed clause: " << clause.get<std::string>() << "\n";
  }
  if (o.contains("warnings")) {
    for (const auto& w : o["warnings"]) human << "  warning: " << w.get<std::string>() << "\n";
  }
  emit(report, out_opts, wall_ms, human.str());
  return o["strictly_passive"].get<bool>() ? kExitOk : kExitPropertyFailed;
}

int run_center(const std::string& path, const std::string& barrier, double tol, int max_iter,
               const std::string& x0, const OutputOptions& out_opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const ReportInputs inputs = inputs_for(path);
  const ModelDocument doc = load_model(path);

  CenterOptions opts;
  opts.kind = (barrier == "ph") ? BarrierKind::kPortHamiltonian : BarrierKind::kStandard;
  opts.tolerance = tol;
  opts.max_iterations = max_iter;
  if (x0 == "midpoint") {
    opts.start = CenterOptions::Start::kMidpoint;
  } else if (x0 == "identity") {
    opts.start = CenterOptions::Start::kIdentity;
  } else {
    opts.start = CenterOptions::Start::kGiven;
    opts.initial_point = certificate_from_file(x0, doc.model.state_dim());
  }

  const CenterResult result = compute_center(doc.model, opts);
  nlohmann::json report = build_center_report(inputs, doc.model, opts, result);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream human;
  human << "center (" << report["outputs"]["barrier"].get<std::string>() << " barrier): " << path
        << "\n"
        << "  converged:   " << (result.converged ? "yes" : "no") << " in " << result.iterations
        << " iterations\n"
        << "  barrier:     " << result.barrier_value << "\n"
        << "  grad norm:   " << result.grad_norm << "\n"
        << "  residual:    " << result.stationarity_residual << "\n"
        << "  lambda_min(P): " << result.ricc_pd_margin << "\n"
        << format_matrix(result.x_center.mat(), "  X_center");
  human << "  closed-loop eigenvalues:\n";
  for (const auto& z : report["outputs"]["closed_loop_eigs"]) {
    human << "    " << z["re"].get<double>() << " + " << z["im"].get<double>() << "i\n";
  }
  if (report["outputs"].contains("warnings")) {
    for (const auto& w : report["outputs"]["warnings"]) {
      human << "  warning: " << w.get<std::string>() << "\n";
    }
  }
  emit(report, out_opts, wall_ms, human.str());
  if (!result.converged) {
    std::cerr << "center: stopped at max iterations before reaching tolerance\n";
    return kExitPropertyFailed;
  }
  return kExitOk;
}

int run_radii(const std::string& path, const std::string& at, const std::string& which,
              double tol, const OutputOptions& out_opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const ReportInputs inputs = inputs_for(path);
  const ModelDocument doc = load_model(path);

  HermitianMatrix x;
  std::string at_label = at;
  if (at == "center") {
    CenterOptions opts;
    opts.tolerance = tol;
    x = compute_center(doc.model, opts).x_center;
  } else if (at == "identity") {
    x = HermitianMatrix::identity(doc.model.state_dim());
  } else {
    x = certificate_from_file(at, doc.model.state_dim());
    at_label = "file";
  }

  const bool want_passivity = which == "passivity" || which == "both";
  const bool want_stability = which == "stability" || which == "both";
  nlohmann::json report =
      build_radii_report(inputs, doc.model, x, at_label, want_passivity, want_stability);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream human;
  const auto& o = report["outputs"];
  human << "radii at " << at_label << ": " << path << "\n";
  if (o.contains("table")) {
    const auto& t = o["table"];
    human << "  alpha^2        = " << t["alpha_sq"].get<double>() << "\n"
          << "  beta^2         = " << t["beta_sq"].get<double>() << "\n"
          << "  xi             = " << t["xi"].get<double>() << "\n"
          << "  alpha*beta     = " << t["alpha_beta"].get<double>() << "\n"
          << "  lambda_min(Rc) = " << t["lambda_min_r_c"].get<double>() << "\n"
          << "  rho_stab       = " << t["rho_stab"].get<double>() << "\n";
  }
  if (o.contains("passivity")) {
    const auto& p = o["passivity"];
    human << "  passivity radius at X: exact " << p["exact_at_gamma"].get<double>() << " in ["
          << p["lower"].get<double>() << ", " << p["upper"].get<double>() << "], gamma* "
          << p["gamma_star"].get<double>() << "\n";
    if (p["x_is_identity"].get<bool>() && at == "center") {
      human << "  note: X = I at the analytic center; exact value also estimates the full "
               "passivity radius\n";
    }
  }
  if (o.contains("stability")) {
    const auto& s = o["stability"];
    human << "  stability radius at X: exact " << s["exact_at_gamma"].get<double>() << " in ["
          << s["lower"].get<double>() << ", " << s["upper"].get<double>() << "]\n";
  }
  if (o.contains("passivity")) {
    human << "  minimal perturbation: rank "
          << o["passivity"]["delta_rank"].get<Index>() << ", Frobenius norm "
          << o["passivity"]["delta_norm_fro"].get<double>() << " (matrix in the JSON report)\n";
  }
  human << "  true stability radius (estimator): " << o["rho_stab"].get<double>() << "\n";
  emit(report, out_opts, wall_ms, human.str());
  return kExitOk;
}

int run_generate(const std::string& out_path, Index n, Index m, std::uint64_t seed,
                 bool complex_entries, const OutputOptions& out_opts) {
  const auto t0 = std::chrono::steady_clock::now();
  ModelDocument doc;
  doc.model = generate_random_ph(n, m, seed, complex_entries);
  doc.name = "random-ph-" + std::to_string(n) + "x" + std::to_string(m);
  doc.seed = seed;
  doc.generator = GaussianSampler::kGeneratorName;
  save_model(doc, out_path);

  ReportInputs inputs = inputs_for(out_path);
  nlohmann::json report = build_generate_report(inputs, doc, complex_entries);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream human;
  human << "generate: wrote " << out_path << " (n = " << n << ", m = " << m << ", seed = " << seed
        << ", " << (complex_entries ? "complex" : "real") << ")\n"
        << "  lambda_min W(I) = " << report["outputs"]["lambda_min_w_identity"].get<double>()
        << "\n";
  emit(report, out_opts, wall_ms, human.str());
  return kExitOk;
}

int run_scalar_demo(double a, double b, double c, double d, const OutputOptions& out_opts) {
  const auto t0 = std::chrono::steady_clock::now();
  nlohmann::json report = build_scalar_demo_report(a, b, c, d);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream human;
  const auto& o = report["outputs"];
  human << "scalar-demo (a, b, c, d) = (" << a << ", " << b << ", " << c << ", " << d << ")\n"
        << "  standard center x* = " << o["x_star_standard"].get<double>()
        << " (numeric " << o["x_star_standard_numeric"].get<double>() << ", delta "
        << o["delta_standard"].get<double>() << ")\n"
        << "  f = " << o["f"].get<double>() << ", p = " << o["p"].get<double>() << "\n"
        << "  det W(x*) = 2 d p = " << o["det_w_at_center"].get<double>() << " (direct "
        << o["det_w_at_center_direct"].get<double>() << ")\n";
  if (o.contains("x_star_ph")) {
    human << "  ph center x* = " << o["x_star_ph"].get<double>() << " (numeric "
          << o["x_star_ph_numeric"].get<double>() << ", delta " << o["delta_ph"].get<double>()
          << ")\n"
          << "  balanced realization {a, b, c, d} = {" << o["balanced"]["a"].get<double>() << ", "
          << o["balanced"]["b"].get<double>() << ", " << o["balanced"]["c"].get<double>() << ", "
          << o["balanced"]["d"].get<double>() << "}\n";
  }
  human << "  perturbation distances: |d| = " << o["distance_d"].get<double>()
        << ", |a| = " << o["distance_a"].get<double>()
        << ", sigma_2[a b; c d] = " << o["sigma_2"].get<double>() << "\n"
        << "  scalar passivity radius rho = sigma_2 = " << o["rho_passivity_scalar"].get<double>()
        << "\n";
  emit(report, out_opts, wall_ms, human.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phcenter: KYP-LMI analytic centers, port-Hamiltonian realizations, and "
               "passivity/stability radius bounds for LTI systems"};
  app.require_subcommand(1);

  OutputOptions out_opts;
  app.add_flag("--json", out_opts.json, "machine-readable report on stdout");
  app.add_flag("--no-timestamp", out_opts.no_timestamp,
               "omit wall-time from reports (deterministic output)");

  std::string path;
  auto* check = app.add_subcommand("check", "minimality, stability, and strict passivity tests");
  check->add_option("path", path, "model document")->required();

  std::string barrier = "standard";
  double tol = default_tolerance();
  int max_iter = 200;
  std::string x0 = "midpoint";
  auto* center = app.add_subcommand("center", "compute the analytic center of the KYP-LMI");
  center->add_option("path", path, "model document")->required();
  center->add_option("--barrier", barrier, "barrier kind")
      ->check(CLI::IsMember({"standard", "ph"}));
  center->add_option("--tol", tol, "relative gradient tolerance");
  center->add_option("--max-iter", max_iter, "Newton iteration cap");
  center->add_option("--x0", x0, "starting point: midpoint, identity, or a certificate file");

  std::string at = "center";
  std::string which = "both";
  auto* radii = app.add_subcommand("radii", "passivity/stability radius bounds at a certificate");
  radii->add_option("path", path, "model document")->required();
  radii->add_option("--at", at, "certificate: center, identity, or a file");
  radii->add_option("--which", which, "which radii to compute")
      ->check(CLI::IsMember({"passivity", "stability", "both"}));

  std::string out_path;
  Index gen_n = 6;
  Index gen_m = 3;
  std::uint64_t seed = 0;
  bool real_entries = false;
  bool complex_entries = false;
  auto* generate = app.add_subcommand("generate", "write a random strictly passive pH model");
  generate->add_option("out", out_path, "output path")->required();
  generate->add_option("--n", gen_n, "state dimension")->required();
  generate->add_option("--m", gen_m, "port dimension")->required();
  generate->add_option("--seed", seed, "PRNG seed")->required();
  auto* real_flag = generate->add_flag("--real", real_entries, "real-valued entries");
  generate->add_flag("--complex", complex_entries, "complex entries (default)")
      ->excludes(real_flag);

  double sa = 0.0, sb = 0.0, sc = 0.0, sd = 0.0;
  auto* scalar = app.add_subcommand("scalar-demo", "closed-form scalar analytic centers");
  scalar->add_option("a", sa)->required();
  scalar->add_option("b", sb)->required();
  scalar->add_option("c", sc)->required();
  scalar->add_option("d", sd)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(path, out_opts);
    if (center->parsed()) return run_center(path, barrier, tol, max_iter, x0, out_opts);
    if (radii->parsed()) return run_radii(path, at, which, tol, out_opts);
    if (generate->parsed()) {
      return run_generate(out_path, gen_n, gen_m, seed, !real_entries, out_opts);
    }
    if (scalar->parsed()) return run_scalar_demo(sa, sb, sc, sd, out_opts);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParseError;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDimensionError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPropertyFailed;
  }
  return kExitOk;
}
