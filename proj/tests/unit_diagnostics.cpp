#include <doctest.h>

#include <nlohmann/json.hpp>

#include "support/generators.hpp"

using namespace padmm;
using namespace padmm::testing;

TEST_CASE("fit_rate recovers exact synthetic laws") {
  std::vector<double> geo(40), pow(40);
  for (int k = 1; k <= 40; ++k) {
    geo[k - 1] = std::pow(2.0, -k);
    pow[k - 1] = 1.0 / std::sqrt(double(k));
  }
  const RateFit g = fit_rate(geo, RateModel::kGeometric);
  CHECK(g.param == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(g.r_squared >= 1.0 - 1e-9);

  const RateFit p = fit_rate(pow, RateModel::kPower);
  CHECK(p.param == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(p.r_squared >= 1.0 - 1e-9);
}

TEST_CASE("fit_rate input contract") {
  std::vector<double> short_series(10, 1.0);
  CHECK_THROWS_AS(fit_rate(short_series, RateModel::kGeometric), std::invalid_argument);

  std::vector<double> with_zero(30, 1.0);
  with_zero[12] = 0.0;
  CHECK_THROWS_AS(fit_rate(with_zero, RateModel::kGeometric), std::invalid_argument);

  std::vector<double> zeros(30, 0.0);
  const RateFit flagged = fit_rate(zeros, RateModel::kGeometric);
  CHECK(flagged.exact_convergence);

  // a constant positive series fits q = 1, within the reported contract (0, 1]
  std::vector<double> constant(30, 2.5);
  const RateFit c = fit_rate(constant, RateModel::kGeometric);
  CHECK(c.param == doctest::Approx(1.0));
  CHECK_FALSE(c.exact_convergence);
}

TEST_CASE("positive_prefix trims at the floor") {
  std::vector<double> s = {1.0, 0.5, 0.25, 0.0, 0.125};
  const auto p = positive_prefix(s);
  CHECK(p.size() == 3);
}

TEST_CASE("polyhedral trace fits a clean geometric law") {
  const PinnedInstance inst = l1_box_instance(21);
  const IterationTrace t = run(inst.problem, PadmmState::zero(inst.problem),
                               StopRule{400, -1.0});
  std::vector<double> du(t.du_G2.begin() + 1, t.du_G2.end());
  const auto series = positive_prefix(du);
  REQUIRE(series.size() >= 20);
  const RateFit fit = fit_rate(series, RateModel::kGeometric);
  CHECK(fit.r_squared >= 0.95);
  CHECK(fit.param < 1.0);
}

TEST_CASE("monotonicity suite: converged quadratic run passes everywhere") {
  const SeparableProblem p = random_quadratic_instance(61);
  RunOptions opts;
  opts.reference = solve_quadratic_kkt(p);
  const IterationTrace t = run(p, PadmmState::zero(p), StopRule{400, -1.0}, opts);
  const Report r = check_monotonicity_suite(t, p.gamma());
  CHECK(r.all_pass());
  for (const auto& c : r.checks) {
    CAPTURE(c.check);
    CHECK(c.worst_violation <= 1e-9);
  }
  // serialization shape used by the CLI report
  const auto j = r.to_json();
  REQUIRE(j.is_array());
  CHECK(j[0].contains("check"));
  CHECK(j[0].contains("pass"));
  CHECK(j[0].contains("worst_violation"));
  CHECK(j[0].contains("index"));
}

TEST_CASE("monotonicity suite: a corrupted trace reports the violating index") {
  const SeparableProblem p = random_quadratic_instance(62);
  IterationTrace t = run(p, PadmmState::zero(p), StopRule{100, -1.0});
  t.du_G2[40] = t.du_G2[39] + 1.0;  // inject a fault
  const Report r = check_monotonicity_suite(t);
  REQUIRE(r.checks.size() == 1);
  CHECK_FALSE(r.checks[0].pass);
  CHECK(r.checks[0].index == 39);  // du[40] - du[39] is the first violating pair
}

TEST_CASE("monotonicity suite: fixed-point run passes vacuously") {
  const SeparableProblem p = one_dimensional_problem();
  Vector half(1), minus_half(1);
  half << 0.5;
  minus_half << -0.5;
  RunOptions opts;
  opts.reference = KktPoint{half, half, minus_half};
  const IterationTrace t =
      run(p, PadmmState::initial(half, half, minus_half), StopRule{10, -1.0}, opts);
  const Report r = check_monotonicity_suite(t, p.gamma());
  CHECK(r.all_pass());
}

TEST_CASE("checkpoint decay on a long converging run") {
  const SeparableProblem p = random_quadratic_instance(63);
  const IterationTrace t = run(p, PadmmState::zero(p), StopRule{400, -1.0});
  const CheckResult c = check_checkpoint_decay(t);
  CHECK(c.pass);
}

TEST_CASE("rate regime: linear regime on a strongly convex fixture") {
  const ScenarioFixture fx = make_scenario_fixture(2, 8, 5);
  const KktPoint ref = solve_quadratic_kkt(fx.problem);
  const double h_star = objective_at(fx.problem, ref);
  const IterationTrace t = run(fx.problem, fx.initial_state(), StopRule{300, -1.0});
  const Report r = check_rate_regime(t, Regime::kLinear, 1.0, h_star);
  CHECK(r.all_pass());
}

TEST_CASE("rate regime: sublinear feasibility bound on a generic instance") {
  const PinnedInstance inst = nonneg_mix_instance(11);
  const IterationTrace t = run(inst.problem, PadmmState::zero(inst.problem),
                               StopRule{300, -1.0});
  const Report r = check_rate_regime(t, Regime::kSublinear);
  CHECK(r.all_pass());
}

TEST_CASE("rate regime: synthetic geometric trace confirms the linear regime") {
  IterationTrace t;
  t.du_G2.push_back(std::nan(""));
  t.objective.push_back(1.0);
  t.feasibility.push_back(1.0);
  t.kkt_norm2.push_back(std::nan(""));
  t.dy_Q2.push_back(std::nan(""));
  for (int k = 1; k <= 60; ++k) {
    t.du_G2.push_back(std::pow(0.7, k));
    t.objective.push_back(1.0 + std::pow(0.7, k));
    t.feasibility.push_back(std::pow(0.7, k));
    t.kkt_norm2.push_back(0.0);
    t.dy_Q2.push_back(0.0);
  }
  const Report r = check_rate_regime(t, Regime::kLinear, 1.0, 1.0);
  CHECK(r.all_pass());
  // the Holder regime check needs a valid exponent
  CHECK_THROWS_AS(check_rate_regime(t, Regime::kHolder, 1.5), std::invalid_argument);
  const Report h = check_rate_regime(t, Regime::kHolder, 0.5, 1.0);
  CHECK(h.all_pass());  // geometric decay clears any power threshold
}

TEST_CASE("scenario fixtures satisfy their hypotheses by construction") {
  const ScenarioFixture s1 = make_scenario_fixture(1, 6, 9);
  CHECK(s1.singular_margin >= 0.1);
  CHECK(s1.problem.A().rows() == s1.problem.A().cols());
  CHECK(s1.problem.B().is_identity());
  CHECK(s1.problem.g().convexity_modulus() > 0.0);

  const ScenarioFixture s2 = make_scenario_fixture(2, 6, 9);
  CHECK(s2.problem.B().is_identity());
  CHECK(s2.problem.f().convexity_modulus() > 0.0);
  CHECK(s2.problem.g().convexity_modulus() > 0.0);

  const ScenarioFixture s3 = make_scenario_fixture(3, 6, 9);
  CHECK(s3.singular_margin > 0.1);
  CHECK(s3.initial_state().lam.isZero());

  const ScenarioFixture s4 = make_scenario_fixture(4, 6, 9);
  CHECK(s4.problem.A().rows() > s4.problem.A().cols());  // coercive by column rank
  CHECK(s4.problem.f().is_quadratic());
  CHECK(s4.problem.g().is_quadratic());
  CHECK(s4.initial_state().lam.isZero());

  CHECK_THROWS_AS(make_scenario_fixture(5, 6, 9), std::invalid_argument);
  CHECK_THROWS_AS(make_scenario_fixture(1, 100, 9), std::invalid_argument);
}

TEST_CASE("scenario fixtures converge geometrically to the oracle point") {
  for (int id = 1; id <= 4; ++id) {
    const ScenarioFixture fx = make_scenario_fixture(id, 8, 13);
    RunOptions opts;
    opts.reference = solve_quadratic_kkt(fx.problem);
    const IterationTrace t = run(fx.problem, fx.initial_state(), StopRule{400, -1.0}, opts);
    std::vector<double> dist(t.dist_ref.begin() + 1, t.dist_ref.end());
    const auto series = positive_prefix(dist);
    REQUIRE(series.size() >= 20);
    const RateFit fit = fit_rate(series, RateModel::kGeometric);
    CAPTURE(id);
    CHECK(fit.r_squared >= 0.9);
    CHECK(fit.param < 1.0);
  }
}
