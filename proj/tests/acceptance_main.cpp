// Acceptance suite: one criterion per entry, each printing a pass/fail line.
// Run with no argument for the full gate or with an index (1..8) for one
// criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "padmm/gravity.hpp"
#include "support/generators.hpp"

using namespace padmm;
using namespace padmm::testing;

namespace {

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&)> check;
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Regression {
  double slope;
};

Regression regress(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return {(sxy - sx * sy / n) / (sxx - sx * sx / n)};
}

// ---------------------------------------------------------------------------
// 1. Oracle equivalence on random well-posed quadratic instances.
bool criterion_oracle_equivalence(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const SeparableProblem p = random_quadratic_instance(seed, /*max_block=*/10);
    const KktPoint ref = solve_quadratic_kkt(p);
    const IterationTrace t = run(p, PadmmState::zero(p), StopRule{100000, 1e-10});
    const PadmmState& last = t.final_state;
    const double dist = std::sqrt((last.x - ref.x).squaredNorm() +
                                  (last.y - ref.y).squaredNorm() +
                                  (last.lam - ref.lam).squaredNorm());
    worst = std::max(worst, dist);
  }
  const double elapsed = seconds_since(t0);
  std::ostringstream os;
  os << "worst |u - u*| = " << worst << ", " << elapsed << " s";
  detail = os.str();
  return worst <= 1e-6 && elapsed < 5.0;
}

// ---------------------------------------------------------------------------
// 2. Descent/bound inequalities at every iteration on 100 seeded instances.
bool criterion_inequality_suite(std::string& detail) {
  constexpr size_t kIters = 400;
  double worst = 0.0;
  size_t failed_checks = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    SeparableProblem problem = [&]() {
      if (seed < 40) return random_quadratic_instance(seed + 500);
      if (seed < 70) return l1_box_instance(seed).problem;
      return nonneg_mix_instance(seed).problem;
    }();
    const KktPoint ref = seed < 40      ? solve_quadratic_kkt(problem)
                         : seed < 70    ? l1_box_instance(seed).ref
                                        : nonneg_mix_instance(seed).ref;
    RunOptions opts;
    opts.reference = ref;
    const IterationTrace t =
        run(problem, PadmmState::zero(problem), StopRule{kIters, -1.0}, opts);
    Report report = check_monotonicity_suite(t, problem.gamma());
    report.checks.push_back(check_checkpoint_decay(t));
    for (const auto& c : report.checks) {
      worst = std::max(worst, c.worst_violation);
      if (!c.pass || c.worst_violation > 1e-8) ++failed_checks;
    }
  }
  std::ostringstream os;
  os << "worst violation = " << worst << ", failing checks = " << failed_checks;
  detail = os.str();
  return failed_checks == 0 && worst <= 1e-8;
}

// ---------------------------------------------------------------------------
// 3. Rate regimes: linear on the four scenario fixtures, geometric objective
//    decay on a polyhedral instance, sublinear feasibility on a generic one.
bool criterion_rate_regimes(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream os;
  bool ok = true;

  for (int id = 1; id <= 4; ++id) {
    const ScenarioFixture fx = make_scenario_fixture(id, 8, 101 + id);
    RunOptions opts;
    opts.reference = solve_quadratic_kkt(fx.problem);
    const IterationTrace t =
        run(fx.problem, fx.initial_state(), StopRule{400, -1.0}, opts);
    std::vector<double> dist(t.dist_ref.begin() + 1, t.dist_ref.end());
    const auto series = positive_prefix(dist);
    const RateFit fit = fit_rate(series, RateModel::kGeometric);
    const bool pass =
        fit.exact_convergence || (fit.r_squared >= 0.9 && fit.param < 0.999);
    ok = ok && pass;
    os << "s" << id << "(q=" << fit.param << ",r2=" << fit.r_squared << ") ";
  }

  {
    const PinnedInstance inst = l1_box_instance(301);
    const double h_star = objective_at(inst.problem, inst.ref);
    const IterationTrace t =
        run(inst.problem, PadmmState::zero(inst.problem), StopRule{400, -1.0});
    const Report r = check_rate_regime(t, Regime::kLinear, 1.0, h_star);
    ok = ok && r.all_pass();
    os << "polyhedral(linear=" << r.all_pass() << ") ";
  }
  {
    const PinnedInstance inst = nonneg_mix_instance(302);
    const IterationTrace t =
        run(inst.problem, PadmmState::zero(inst.problem), StopRule{400, -1.0});
    const Report r = check_rate_regime(t, Regime::kSublinear);
    ok = ok && r.all_pass();
    os << "generic(beta>=0.5: " << r.all_pass() << ") ";
  }
  const double elapsed = seconds_since(t0);
  os << elapsed << " s";
  detail = os.str();
  return ok && elapsed < 30.0;
}

// ---------------------------------------------------------------------------
// Shared gravity problem for criteria 4-7.
const GravityProblem& gravity_problem() {
  static const GravityProblem gp = make_gravity_problem(GravityConfig{});
  return gp;
}

// 4. Energy monotonicity and the noise-propagation bounds on benchmark runs.
bool criterion_gravity_bounds(std::string& detail) {
  const GravityProblem& gp = gravity_problem();
  const std::vector<double> levels = {1e-2, 1e-3, 1e-4};
  double worst = 0.0;
  bool ok = true;
  for (size_t i = 0; i < levels.size(); ++i) {
    const GravityRun grun = run_gravity_level(gp, levels[i], i + 1);
    const CheckResult mono = check_energy_monotone(grun.trace);
    const Report bounds =
        check_ip_bounds(grun.trace, gp.spec_for(gp.b, levels[i]), levels[i]);
    ok = ok && mono.pass && bounds.all_pass();
    worst = std::max(worst, mono.worst_violation);
    for (const auto& c : bounds.checks) worst = std::max(worst, c.worst_violation);
  }
  std::ostringstream os;
  os << "worst violation = " << worst;
  detail = os.str();
  return ok && worst <= 1e-8;
}

// 5. Noise-level study against the published values (factor-2 bands).
bool criterion_table_study(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const GravityProblem& gp = gravity_problem();
  const std::vector<GravityRun> runs = run_table1(gp);
  const double published[4] = {4.9307e-2, 1.3255e-2, 5.2985e-3, 2.1196e-3};

  bool ok = runs.size() == 4;
  std::ostringstream os;
  double prev_quarter = 1e300;
  for (size_t i = 0; i < runs.size() && ok; ++i) {
    const Table1Row& row = runs[i].row;
    const bool in_band = row.err_min >= 0.5 * published[i] &&
                         row.err_min <= 2.0 * published[i];
    const bool half_band = row.ratio_half >= 0.05 && row.ratio_half <= 0.5;
    const bool quarter_drop = row.ratio_quarter < prev_quarter;
    prev_quarter = row.ratio_quarter;
    ok = ok && in_band && half_band && quarter_drop && row.complete;
    os << "d=" << row.delta << " err=" << row.err_min << "/" << published[i]
       << " rh=" << row.ratio_half << " rq=" << row.ratio_quarter << "; ";
  }
  const double elapsed = seconds_since(t0);
  os << elapsed << " s";
  detail = os.str();
  return ok && elapsed < 180.0;
}

// 6. Rate law at the a-priori stop: log err(k_delta) against log delta.
bool criterion_rate_law(std::string& detail) {
  const GravityProblem& gp = gravity_problem();
  const std::vector<double> levels = {1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> xs, ys;
  for (size_t i = 0; i < levels.size(); ++i) {
    const GravityRun grun = run_gravity_level(gp, levels[i], i);
    const size_t kd = a_priori_stop(levels[i], 1.0);
    const double err = grun.rel_err[std::min(kd, grun.rel_err.size() - 1)];
    xs.push_back(std::log(levels[i]));
    ys.push_back(std::log(err));
  }
  const double slope = regress(xs, ys).slope;
  std::ostringstream os;
  os << "slope = " << slope;
  detail = os.str();
  return slope >= 0.20;
}

// 7. Semi-convergence: smoothed error has an interior minimum and grows by
//    at least 10% before the cap.
bool criterion_semi_convergence(std::string& detail) {
  const GravityProblem& gp = gravity_problem();
  const std::vector<double> levels = {1e-1, 1e-2, 1e-3, 1e-4};
  bool ok = true;
  std::ostringstream os;
  for (size_t i = 0; i < levels.size(); ++i) {
    const GravityRun grun = run_gravity_level(gp, levels[i], i);
    const auto& err = grun.rel_err;
    std::vector<double> smooth(err.size());
    for (size_t k = 0; k < err.size(); ++k) {
      const size_t lo = k >= 2 ? k - 2 : 0;
      const size_t hi = std::min(err.size() - 1, k + 2);
      double acc = 0.0;
      for (size_t j = lo; j <= hi; ++j) acc += err[j];
      smooth[k] = acc / double(hi - lo + 1);
    }
    size_t kmin = 1;
    for (size_t k = 2; k < smooth.size(); ++k)
      if (smooth[k] < smooth[kmin]) kmin = k;
    double later_max = 0.0;
    for (size_t k = kmin; k < smooth.size(); ++k)
      later_max = std::max(later_max, smooth[k]);
    const bool interior = kmin >= 1 && kmin + 1 < smooth.size();
    const bool grows = later_max >= 1.10 * smooth[kmin];
    ok = ok && interior && grows;
    os << "d=" << levels[i] << " k*=" << kmin << " growth=" << later_max / smooth[kmin]
       << "x; ";
  }
  detail = os.str();
  return ok;
}

// 8. The simplified scheme agrees with the general one under the parameter
//    identification.
bool criterion_specialization(std::string& detail) {
  double worst = 0.0;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed * 31 + 7);
    const Index n = 2 + static_cast<Index>(seed % 5);
    const Matrix a = gaussian_matrix(n, n, rng);
    const Vector b_delta = gaussian_vector(n, rng);
    std::uniform_real_distribution<double> unif(0.3, 3.0);
    const double rho1 = unif(rng), coupling = unif(rng);
    const InverseProblemSpec simplified(
        LinearMap::dense(a), LinearMap::identity(n), ProxFunction::nonneg(n),
        ProxFunction::quadratic(Vector::Zero(n)), rho1, coupling, coupling,
        PsdMap::zero(n), b_delta, 0.0);
    const InverseProblemSpec general(
        LinearMap::dense(a), LinearMap::identity(n), ProxFunction::nonneg(n),
        ProxFunction::quadratic(Vector::Zero(n)), rho1, 1.0, coupling, PsdMap::zero(n),
        b_delta, 0.0);
    RegState ss = RegState::zero(simplified);
    RegState gs = RegState::zero(general);
    for (int k = 0; k < 50; ++k) {
      ss = padmm26_step(simplified, ss);
      gs = padmm2_step(general, gs);
      worst = std::max({worst, (ss.z - gs.z).norm(), (ss.x - gs.x).norm(),
                        (ss.lam - gs.lam).norm(), (ss.nu - gs.nu).norm()});
    }
  }
  std::ostringstream os;
  os << "worst iterate gap = " << worst;
  detail = os.str();
  return worst <= 1e-10;
}

std::vector<Criterion> all_criteria() {
  return {
      {1, "oracle equivalence (well-posed)", criterion_oracle_equivalence},
      {2, "inequality suite (descent bounds)", criterion_inequality_suite},
      {3, "rate regimes (linear/sublinear)", criterion_rate_regimes},
      {4, "inequality suite (noise bounds)", criterion_gravity_bounds},
      {5, "noise-level table reproduction", criterion_table_study},
      {6, "rate law at the a-priori stop", criterion_rate_law},
      {7, "semi-convergence", criterion_semi_convergence},
      {8, "specialization equivalence", criterion_specialization},
  };
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (const auto& criterion : all_criteria()) {
    if (only != 0 && criterion.id != only) continue;
    std::string detail;
    bool pass = false;
    try {
      pass = criterion.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("criterion %d [%s] %s — %s\n", criterion.id, pass ? "PASS" : "FAIL",
                criterion.name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
