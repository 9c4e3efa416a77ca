#include "padmm/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "padmm/config.hpp"
#include "padmm/gravity.hpp"

namespace padmm::cli {

namespace {

using nlohmann::json;

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report: " + path);
  out << j.dump(2) << "\n";
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

//! Config parsing, validation and I/O failures map to the usage exit code.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
}

//! Reference KKT point for diagnostics when the config does not supply one:
//! a long high-precision run of the method itself. Skipped when that run
//! does not reach the tolerance, so the distance checks never compare
//! against a point that is not a KKT point.
std::optional<KktPoint> self_reference(const SeparableProblem& problem,
                                       const PadmmState& init, size_t max_iter) {
  const IterationTrace t =
      run(problem, init, StopRule{std::max<size_t>(20000, 10 * max_iter), 1e-12});
  if (!t.converged) return std::nullopt;
  const PadmmState& s = t.final_state;
  return KktPoint{s.x, s.y, s.lam};
}

}  // namespace

int cmd_solve(const SolveArgs& args) {
  return guarded([&]() -> int {
  if (!args.ergodic_path.empty() && !args.store_iterates)
    return usage_error("--ergodic-out requires --store-iterates");

  ProblemConfig config = load_problem_config(args.config_path);

  RunOptions opts;
  opts.store_iterates = args.store_iterates;
  opts.reference = config.reference;
  if (!opts.reference)
    opts.reference = self_reference(config.problem, config.init, args.max_iter);

  const IterationTrace trace =
      run(config.problem, config.init, StopRule{args.max_iter, args.tol}, opts);
  write_trace_csv(args.trace_path, trace);

  json report;
  report["converged"] = trace.converged;
  report["iterations"] = trace.iterations();
  report["monotonicity"] =
      check_monotonicity_suite(trace, config.problem.gamma()).to_json();
  {
    std::vector<double> du(trace.du_G2.begin() + 1, trace.du_G2.end());
    const std::vector<double> series = positive_prefix(du);
    if (series.size() >= 20) {
      report["rate_fits"] = {
          {"du_G2_geometric", rate_fit_to_json(fit_rate(series, RateModel::kGeometric))},
          {"du_G2_power", rate_fit_to_json(fit_rate(series, RateModel::kPower))}};
    }
  }
  const std::string report_path =
      args.report_path.empty() ? args.trace_path + ".report.json" : args.report_path;
  write_json(report_path, report);
  std::cout << report.dump(2) << "\n";

  if (!args.ergodic_path.empty()) {
    const size_t k = args.ergodic_k == 0 ? trace.iterations() : args.ergodic_k;
    const auto [xbar, ybar] = ergodic_iterate(trace, k);
    json ej = {{"k", k},
               {"x", std::vector<double>(xbar.data(), xbar.data() + xbar.size())},
               {"y", std::vector<double>(ybar.data(), ybar.data() + ybar.size())}};
    write_json(args.ergodic_path, ej);
  }
  return trace.converged ? kExitOk : kExitIncomplete;
  });
}

int cmd_regularize(const RegularizeArgs& args) {
  return guarded([&]() -> int {
  InverseConfig config = load_inverse_config(args.config_path);

  Vector b_delta;
  double delta = args.delta;
  if (config.b_delta) {
    b_delta = *config.b_delta;
  } else if (delta > 0.0) {
    b_delta = add_noise(config.b, delta, args.seed, Vector::Ones(config.b.size()));
  } else {
    b_delta = config.b;
  }

  size_t iters;
  if (delta > 0.0) {
    iters = a_priori_stop(delta, args.c_stop);
  } else if (args.max_iter > 0) {
    iters = args.max_iter;
  } else {
    return usage_error("delta = 0 requires --max-iter");
  }
  if (args.max_iter > 0) iters = std::min(iters, args.max_iter);

  const InverseProblemSpec spec = config.spec_with(b_delta, delta);
  if (config.scheme == RegScheme::kSimplified && !spec.simplified_compatible())
    return usage_error("config requests the simplified scheme but is incompatible");
  if (config.certificate && config.x_true)
    validate_certificate(*config.certificate, spec, *config.x_true);

  const Vector* x_true = config.x_true ? &*config.x_true : nullptr;
  const SourceCertificate* cert =
      (config.certificate && config.x_true) ? &*config.certificate : nullptr;
  const RegRun reg = run_regularized(spec, config.scheme, iters, x_true, cert);
  write_reg_trace_csv(args.trace_path, reg.trace);

  json summary;
  summary["delta"] = delta;
  summary["k_stop"] = iters;
  summary["rho1"] = config.rho1;
  if (reg.trace.has_err) {
    const auto& err = reg.trace.err_x;
    size_t iter_min = 1;
    for (size_t k = 2; k < err.size(); ++k)
      if (err[k] < err[iter_min]) iter_min = k;
    summary["err_at_stop"] = err.back();
    summary["err_min"] = err[iter_min];
    summary["iter_min"] = iter_min;
  }
  const std::string summary_path =
      args.summary_path.empty() ? args.trace_path + ".summary.json" : args.summary_path;
  write_json(summary_path, summary);
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
  });
}

int cmd_gravity(const GravityArgs& args) {
  return guarded([&]() -> int {
  if (args.delta < 0.0) return usage_error("--noise must be nonnegative");
  GravityConfig config;
  config.n = args.n;
  config.rho1 = args.rho1;
  config.rho2 = args.rho2;
  config.seed = args.seed;
  const GravityProblem problem = make_gravity_problem(config);
  const GravityRun run = run_gravity_level(problem, args.delta, 0, args.max_iter);
  write_reg_trace_csv(args.out_prefix + "_trace.csv", run.trace);

  json summary = {{"delta", run.row.delta},
                  {"err_min", run.row.err_min},
                  {"iter_min", run.row.iter_min},
                  {"ratio_half", run.row.ratio_half},
                  {"ratio_quarter", run.row.ratio_quarter},
                  {"complete", run.row.complete},
                  {"cap", run.cap},
                  {"rho1", config.rho1},
                  {"seed", args.seed}};
  write_json(args.out_prefix + "_summary.json", summary);
  std::cout << summary.dump(2) << "\n";
  return run.row.complete ? kExitOk : kExitIncomplete;
  });
}

int cmd_table1(const Table1Args& args) {
  return guarded([&]() -> int {
  GravityConfig config;
  config.n = args.n;
  config.seed = args.seed;
  config.deep = args.deep;
  if (!args.levels.empty()) {
    for (size_t i = 0; i + 1 < args.levels.size(); ++i)
      if (args.levels[i] <= args.levels[i + 1])
        return usage_error("--levels must be positive and strictly descending");
    if (args.levels.back() <= 0.0)
      return usage_error("--levels must be positive and strictly descending");
    config.noise_levels = args.levels;
  }

  const GravityProblem problem = make_gravity_problem(config);
  const std::vector<GravityRun> runs = run_table1(problem);

  std::vector<Table1Row> rows;
  rows.reserve(runs.size());
  const std::string stem = args.out.size() > 4 && args.out.ends_with(".csv")
                               ? args.out.substr(0, args.out.size() - 4)
                               : args.out;
  bool incomplete = false;
  for (size_t i = 0; i < runs.size(); ++i) {
    rows.push_back(runs[i].row);
    incomplete = incomplete || !runs[i].row.complete;
    char suffix[64];
    std::snprintf(suffix, sizeof(suffix), "_delta_%g.csv", runs[i].row.delta);
    write_reg_trace_csv(stem + suffix, runs[i].trace);
  }
  write_table1_csv(args.out, rows);

  std::cout << "delta     err_min      iter_min  err/delta^(1/2)  err/delta^(1/4)"
            << (incomplete ? "  (incomplete rows present)" : "") << "\n";
  for (const auto& r : rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-9.1e %-12.4e %-9zu %-16.6f %-16.6f%s\n", r.delta,
                  r.err_min, r.iter_min, r.ratio_half, r.ratio_quarter,
                  r.complete ? "" : "  [incomplete]");
    std::cout << line;
  }
  return incomplete ? kExitIncomplete : kExitOk;
  });
}

int cmd_verify(const VerifyArgs& args) {
  return guarded([&]() -> int {
  const CsvTable table = read_csv(args.trace_path);

  json refj;
  if (!args.reference_path.empty()) {
    std::ifstream in(args.reference_path);
    if (!in) return usage_error("cannot open reference: " + args.reference_path);
    in >> refj;
  }

  Report report;
  if (table.has("du_G2")) {
    IterationTrace trace;
    trace.du_G2 = table.column("du_G2");
    trace.objective = table.column("objective");
    trace.feasibility = table.column("feasibility");
    trace.kkt_norm2 = table.column("kkt_norm2");
    trace.dy_Q2 = table.column("dy_Q2");
    if (table.has("dist_ref_G2")) trace.dist_ref_G2 = table.column("dist_ref_G2");
    std::optional<double> gamma;
    if (refj.contains("gamma")) gamma = refj["gamma"].get<double>();
    report = check_monotonicity_suite(trace, gamma);
    if (trace.iterations() >= 8) report.checks.push_back(check_checkpoint_decay(trace));
  } else if (table.has("E")) {
    RegTrace trace;
    trace.energy = table.column("E");
    trace.phi = table.column("Phi");
    trace.has_phi = !trace.phi.empty() && !std::isnan(trace.phi.front());
    report.checks.push_back(check_energy_monotone(trace));
    if (trace.has_phi && refj.contains("delta") && refj.contains("rho1")) {
      const Report ip = check_ip_bounds(trace, refj["rho1"].get<double>(),
                                        refj["delta"].get<double>());
      report.checks.insert(report.checks.end(), ip.checks.begin(), ip.checks.end());
    }
  } else {
    return usage_error("trace schema not recognized (expected du_G2 or E columns)");
  }

  const json out = report.to_json();
  std::cout << out.dump(2) << "\n";
  if (!args.report_path.empty()) write_json(args.report_path, out);
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
  });
}

}  // namespace padmm::cli
