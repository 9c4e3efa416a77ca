#include <CLI11.hpp>

#include "padmm/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Proximal splitting toolkit: two-block solver, convergence "
               "diagnostics, and regularized inverse problems"};
  app.require_subcommand(1);

  padmm::cli::SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "Run the two-block solver on a config");
  solve->add_option("--config", solve_args.config_path, "problem config (JSON)")
      ->required();
  solve->add_option("--trace", solve_args.trace_path, "output trace CSV");
  solve->add_option("--report", solve_args.report_path, "output diagnostics JSON");
  solve->add_option("--tol", solve_args.tol, "stop when ||du||_G <= tol");
  solve->add_option("--max-iter", solve_args.max_iter, "iteration cap");
  solve->add_flag("--store-iterates", solve_args.store_iterates,
                  "keep full iterates in memory");
  solve->add_option("--ergodic-out", solve_args.ergodic_path,
                    "write the ergodic average (requires --store-iterates)");
  solve->add_option("--ergodic-k", solve_args.ergodic_k,
                    "ergodic index (default: last iteration)");

  padmm::cli::RegularizeArgs reg_args;
  auto* reg = app.add_subcommand("regularize",
                                 "Early-stopped splitting run on an inverse problem");
  reg->add_option("--config", reg_args.config_path, "inverse problem config (JSON)")
      ->required();
  reg->add_option("--delta", reg_args.delta, "noise level")->required();
  reg->add_option("--c-stop", reg_args.c_stop, "stopping constant in ceil(c/delta)");
  reg->add_option("--seed", reg_args.seed, "noise seed");
  reg->add_option("--max-iter", reg_args.max_iter, "iteration cap (required if delta=0)");
  reg->add_option("--trace", reg_args.trace_path, "output trace CSV");
  reg->add_option("--summary", reg_args.summary_path, "output summary JSON");

  padmm::cli::GravityArgs grav_args;
  auto* grav = app.add_subcommand("gravity", "Gravity-surveying benchmark, one level");
  grav->add_option("--noise", grav_args.delta, "noise level delta")->required();
  grav->add_option("--seed", grav_args.seed, "master seed");
  grav->add_option("--n", grav_args.n, "grid size");
  grav->add_option("--rho1", grav_args.rho1, "data penalty");
  grav->add_option("--rho2", grav_args.rho2, "coupling penalty");
  grav->add_option("--max-iter", grav_args.max_iter, "iteration cap override");
  grav->add_option("--out-prefix", grav_args.out_prefix, "output file prefix");

  padmm::cli::Table1Args tab_args;
  auto* tab = app.add_subcommand("table1", "Noise-level study over the benchmark");
  tab->add_option("--levels", tab_args.levels, "descending noise levels");
  tab->add_flag("--deep", tab_args.deep, "include the long 1e-5 and 1e-6 rows");
  tab->add_option("--seed", tab_args.seed, "master seed");
  tab->add_option("--n", tab_args.n, "grid size");
  tab->add_option("--out", tab_args.out, "output CSV");

  padmm::cli::VerifyArgs ver_args;
  auto* ver = app.add_subcommand("verify", "Check the inequality suite on a trace CSV");
  ver->add_option("--trace", ver_args.trace_path, "trace CSV")->required();
  ver->add_option("--reference", ver_args.reference_path,
                  "reference JSON (gamma, H_star, delta, rho1)");
  ver->add_option("--report", ver_args.report_path, "output report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : padmm::cli::kExitUsage;
  }

  if (solve->parsed()) return padmm::cli::cmd_solve(solve_args);
  if (reg->parsed()) return padmm::cli::cmd_regularize(reg_args);
  if (grav->parsed()) return padmm::cli::cmd_gravity(grav_args);
  if (tab->parsed()) return padmm::cli::cmd_table1(tab_args);
  if (ver->parsed()) return padmm::cli::cmd_verify(ver_args);
  return padmm::cli::kExitUsage;
}
