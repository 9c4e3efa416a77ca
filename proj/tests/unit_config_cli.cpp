#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>

#include "padmm/cli.hpp"
#include "padmm/config.hpp"
#include "padmm/gravity.hpp"
#include "support/generators.hpp"

using namespace padmm;
using namespace padmm::testing;
using nlohmann::json;

namespace {

std::string tmp_path(const std::string& name) { return "cli_test_" + name; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

ProblemConfig one_d_config() {
  SeparableProblem p = one_dimensional_problem();
  PadmmState init = PadmmState::zero(p);
  return ProblemConfig{std::move(p), std::move(init), std::nullopt};
}

}  // namespace

TEST_CASE("configs round-trip to equal values") {
  for (uint64_t seed : {2ull, 5ull}) {
    SeparableProblem p = random_quadratic_instance(seed);
    ProblemConfig config{p, PadmmState::zero(p), solve_quadratic_kkt(p)};
    const json j = problem_config_to_json(config);
    const ProblemConfig back = problem_config_from_json(j);
    CHECK((back.problem.A().to_dense() - p.A().to_dense()).norm() == 0.0);
    CHECK((back.problem.B().to_dense() - p.B().to_dense()).norm() == 0.0);
    CHECK((back.problem.c() - p.c()).norm() == 0.0);
    CHECK((back.problem.P().to_dense() - p.P().to_dense()).norm() == 0.0);
    CHECK((back.problem.Q().to_dense() - p.Q().to_dense()).norm() == 0.0);
    CHECK(back.problem.rho() == p.rho());
    CHECK(back.problem.x_strategy() == p.x_strategy());
    REQUIRE(back.reference.has_value());
    CHECK((back.reference->lam - config.reference->lam).norm() == 0.0);
  }
  // linearized metrics survive the round trip
  PinnedInstance inst = l1_box_instance(4);
  ProblemConfig config{inst.problem, PadmmState::zero(inst.problem), inst.ref};
  const ProblemConfig back = problem_config_from_json(problem_config_to_json(config));
  CHECK(back.problem.x_strategy() == SubproblemStrategy::kLinearized);
  CHECK(back.problem.tau_x() == inst.problem.tau_x());
  CHECK(back.problem.f().kind() == ProxFunction::Kind::kL1);
  CHECK(back.problem.f().l1_weight() == inst.problem.f().l1_weight());
  CHECK((back.problem.g().box_lower() - inst.problem.g().box_lower()).norm() == 0.0);
}

TEST_CASE("map and prox parsing rejects unknown kinds") {
  CHECK_THROWS(linear_map_from_json(json{{"kind", "mystery"}}));
  CHECK_THROWS(prox_from_json(json{{"kind", "mystery"}}));
  CHECK_THROWS(psd_map_from_json(json{{"kind", "mystery"}}));
  // dense data length must match dimensions
  CHECK_THROWS(linear_map_from_json(
      json{{"kind", "dense"}, {"rows", 2}, {"cols", 2}, {"data", {1.0, 2.0}}}));
}

TEST_CASE("matrix csv references load relative to the config") {
  write_file(tmp_path("mat.csv"), "1,0\n0,2\n");
  const LinearMap m = linear_map_from_json(
      json{{"kind", "dense"}, {"csv", tmp_path("mat.csv")}}, ".");
  CHECK(m.to_dense()(1, 1) == 2.0);
  std::remove(tmp_path("mat.csv").c_str());
}

TEST_CASE("solve command: bundled example runs to convergence") {
  const std::string cfg = std::string(PADMM_SOURCE_DIR) + "/configs/one_dimensional.json";

  cli::SolveArgs args;
  args.config_path = cfg;
  args.trace_path = tmp_path("one_d_trace.csv");
  args.report_path = tmp_path("one_d_report.json");
  args.tol = 1e-9;
  args.max_iter = 500;
  CHECK(cli::cmd_solve(args) == cli::kExitOk);

  const CsvTable table = read_csv(args.trace_path);
  CHECK(table.has("du_G2"));
  CHECK(table.has("dist_ref_G2"));
  CHECK(table.rows() >= 2);

  std::ifstream in(args.report_path);
  json report;
  in >> report;
  CHECK(report["converged"].get<bool>());
  for (const auto& c : report["monotonicity"]) CHECK(c["pass"].get<bool>());

  // non-convergence within the budget exits with the incomplete code
  cli::SolveArgs tight = args;
  tight.max_iter = 2;
  tight.tol = 1e-14;
  CHECK(cli::cmd_solve(tight) == cli::kExitIncomplete);

  std::remove(args.trace_path.c_str());
  std::remove(args.report_path.c_str());
}

TEST_CASE("solve command: invalid configs exit with the usage code") {
  const std::string cfg = tmp_path("bad.json");

  cli::SolveArgs args;
  args.config_path = cfg;
  args.trace_path = tmp_path("bad_trace.csv");

  write_file(cfg, "{\"problem\": {\"rho\": -1.0}}");
  CHECK(cli::cmd_solve(args) == cli::kExitUsage);

  write_file(cfg, "not json");
  CHECK(cli::cmd_solve(args) == cli::kExitUsage);

  args.config_path = tmp_path("missing.json");
  CHECK(cli::cmd_solve(args) == cli::kExitUsage);
  std::remove(cfg.c_str());
}

TEST_CASE("solve command: ergodic output needs iterate storage") {
  const std::string cfg = tmp_path("one_d2.json");
  save_problem_config(cfg, one_d_config());
  cli::SolveArgs args;
  args.config_path = cfg;
  args.trace_path = tmp_path("one_d2_trace.csv");
  args.ergodic_path = tmp_path("one_d2_ergodic.json");
  CHECK(cli::cmd_solve(args) == cli::kExitUsage);

  args.store_iterates = true;
  CHECK(cli::cmd_solve(args) == cli::kExitOk);
  std::ifstream in(args.ergodic_path);
  json ej;
  in >> ej;
  CHECK(ej.contains("x"));
  std::remove(cfg.c_str());
  std::remove(args.trace_path.c_str());
  std::remove((args.trace_path + ".report.json").c_str());
  std::remove(args.ergodic_path.c_str());
}

TEST_CASE("verify command: healthy, corrupted and unreadable traces") {
  const SeparableProblem p = random_quadratic_instance(8);
  RunOptions opts;
  opts.reference = solve_quadratic_kkt(p);
  const IterationTrace t = run(p, PadmmState::zero(p), StopRule{120, -1.0}, opts);
  const std::string trace = tmp_path("verify_trace.csv");
  write_trace_csv(trace, t);

  const std::string ref = tmp_path("verify_ref.json");
  write_file(ref, json{{"gamma", p.gamma()}}.dump());

  cli::VerifyArgs args;
  args.trace_path = trace;
  args.reference_path = ref;
  CHECK(cli::cmd_verify(args) == cli::kExitOk);

  // corrupt one record: the report must name the violating index
  IterationTrace bad = t;
  bad.du_G2[60] = bad.du_G2[59] + 1.0;
  write_trace_csv(trace, bad);
  args.report_path = tmp_path("verify_report.json");
  CHECK(cli::cmd_verify(args) == cli::kExitVerifyFailed);
  {
    std::ifstream in(args.report_path);
    json report;
    in >> report;
    bool found = false;
    for (const auto& c : report)
      if (!c["pass"].get<bool>() && c["index"].get<long>() == 59) found = true;
    CHECK(found);
  }

  write_file(trace, "");
  CHECK(cli::cmd_verify(args) == cli::kExitUsage);
  write_file(trace, "a,b\n1,2\n");
  CHECK(cli::cmd_verify(args) == cli::kExitUsage);

  std::remove(trace.c_str());
  std::remove(ref.c_str());
  std::remove(args.report_path.c_str());
}

TEST_CASE("verify command: regularization traces check the noise bounds") {
  std::mt19937_64 rng(41);
  Matrix a = gaussian_matrix(5, 5, rng);
  const Vector omega = gaussian_vector(5, rng);
  const GroundTruth gt = make_ground_truth(LinearMap::dense(a), omega);
  const double delta = 1e-2;
  const Vector b_delta = add_noise(gt.b, delta, 7, Vector::Ones(5));
  const InverseProblemSpec spec(LinearMap::dense(a), LinearMap::identity(5),
                                ProxFunction::nonneg(5),
                                ProxFunction::quadratic(Vector::Zero(5)), 1.0, 1.0, 1.0,
                                PsdMap::zero(5), b_delta, delta);
  const RegRun reg = run_regularized(spec, RegScheme::kSimplified, 150, &gt.x_true,
                                     &gt.cert);
  const std::string trace = tmp_path("verify_reg.csv");
  write_reg_trace_csv(trace, reg.trace);
  const std::string ref = tmp_path("verify_reg_ref.json");
  write_file(ref, json{{"delta", delta}, {"rho1", 1.0}}.dump());

  cli::VerifyArgs args;
  args.trace_path = trace;
  args.reference_path = ref;
  CHECK(cli::cmd_verify(args) == cli::kExitOk);
  std::remove(trace.c_str());
  std::remove(ref.c_str());
}

TEST_CASE("regularize command drives the a-priori stop") {
  std::mt19937_64 rng(43);
  Matrix a = gaussian_matrix(6, 6, rng);
  const Vector omega = gaussian_vector(6, rng);
  const GroundTruth gt = make_ground_truth(LinearMap::dense(a), omega);
  InverseConfig config{LinearMap::dense(a),
                       LinearMap::identity(6),
                       ProxFunction::nonneg(6),
                       ProxFunction::quadratic(Vector::Zero(6)),
                       1.0,
                       1.0,
                       1.0,
                       PsdMap::zero(6),
                       gt.b,
                       std::nullopt,
                       gt.x_true,
                       gt.cert,
                       RegScheme::kSimplified};
  const std::string cfg = tmp_path("reg.json");
  save_inverse_config(cfg, config);

  cli::RegularizeArgs args;
  args.config_path = cfg;
  args.delta = 0.05;
  args.seed = 3;
  args.trace_path = tmp_path("reg_trace.csv");
  args.summary_path = tmp_path("reg_summary.json");
  CHECK(cli::cmd_regularize(args) == cli::kExitOk);
  {
    std::ifstream in(args.summary_path);
    json summary;
    in >> summary;
    CHECK(summary["k_stop"].get<size_t>() == 20);  // ceil(1 / 0.05)
    CHECK(summary.contains("err_min"));
  }
  // delta = 0 needs an explicit budget
  args.delta = 0.0;
  CHECK(cli::cmd_regularize(args) == cli::kExitUsage);
  args.max_iter = 50;
  CHECK(cli::cmd_regularize(args) == cli::kExitOk);

  std::remove(cfg.c_str());
  std::remove(args.trace_path.c_str());
  std::remove(args.summary_path.c_str());
}

TEST_CASE("table command is deterministic under a fixed seed") {
  auto read_all = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  cli::Table1Args args;
  args.n = 50;
  args.levels = {1e-1, 1e-2};
  args.seed = 42;
  args.out = tmp_path("table1.csv");
  CHECK(cli::cmd_table1(args) == cli::kExitOk);
  const std::string first = read_all(args.out);
  CHECK(cli::cmd_table1(args) == cli::kExitOk);
  CHECK(read_all(args.out) == first);
  CHECK_FALSE(first.empty());

  // ascending levels are a usage error
  cli::Table1Args bad = args;
  bad.levels = {1e-2, 1e-1};
  CHECK(cli::cmd_table1(bad) == cli::kExitUsage);

  std::remove(args.out.c_str());
  std::remove(tmp_path("table1_delta_0.1.csv").c_str());
  std::remove(tmp_path("table1_delta_0.01.csv").c_str());
}

TEST_CASE("gravity command writes a trace and summary") {
  cli::GravityArgs args;
  args.n = 60;
  args.delta = 1e-2;
  args.max_iter = 300;
  args.out_prefix = tmp_path("grav");
  CHECK(cli::cmd_gravity(args) == cli::kExitOk);
  const CsvTable table = read_csv(args.out_prefix + "_trace.csv");
  CHECK(table.has("E"));
  CHECK(table.has("Phi"));
  CHECK(table.has("err_x"));
  std::remove((args.out_prefix + "_trace.csv").c_str());
  std::remove((args.out_prefix + "_summary.json").c_str());
}
