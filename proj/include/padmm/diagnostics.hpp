#ifndef PADMM_DIAGNOSTICS_HPP_
#define PADMM_DIAGNOSTICS_HPP_

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "padmm/solver.hpp"

namespace padmm {

enum class RateModel { kPower, kGeometric };

//! Least-squares fit of a decay law in the log domain over the tail window
//! of a series. For the power model the fitted parameter is the exponent
//! beta of C*k^(-beta); for the geometric model it is the ratio q of C*q^k.
struct RateFit {
  RateModel model;
  double param = 0.0;
  double r_squared = 0.0;
  size_t window_begin = 0;  // inclusive, 0-based into the series
  size_t window_end = 0;    // exclusive
  bool exact_convergence = false;
};

//! Fits the tail window (last `window_fraction` of the series, default the
//! last half). Entries are indexed by k = position + 1. All-zero series are
//! flagged as exact convergence; other nonpositive entries are rejected.
RateFit fit_rate(const std::vector<double>& series, RateModel model,
                 double window_fraction = 0.5);

//! Longest leading run of entries above a relative floor; use to trim
//! series that underflow to zero after finite convergence before fitting.
std::vector<double> positive_prefix(const std::vector<double>& series,
                                    double floor_rel = 1e-14);

struct CheckResult {
  std::string check;
  bool pass = true;
  double worst_violation = 0.0;
  long index = -1;  // iteration of the worst violation, -1 if none
  size_t checked = 0;
};

struct Report {
  std::vector<CheckResult> checks;
  bool all_pass() const;
  nlohmann::json to_json() const;
};

//! Verifies the descent inequalities of the iteration on a recorded trace:
//! monotonicity of ||du||_G^2, monotonicity of the G-distance to the
//! reference KKT point, the telescoping bound, the objective lower bound,
//! and (when gamma is supplied) the KKT-certificate bound. Checks whose
//! series are absent from the trace are skipped.
Report check_monotonicity_suite(const IterationTrace& trace,
                                std::optional<double> gamma = std::nullopt);

//! Checkpoint test of the o(1/k) law: k*||du^k||_G^2 must be non-increasing
//! across k in {K/4, K/2, K}.
CheckResult check_checkpoint_decay(const IterationTrace& trace);

enum class Regime { kSublinear, kHolder, kLinear };

//! Asserts the decay rate of |H - H_*| and the feasibility residual under
//! the given regime hypothesis: fitted power exponent beta >= 0.5
//! (sublinear), beta >= 1/(2(1-alpha)) (Holder), or a geometric fit with
//! r^2 >= 0.9 and q <= 1 - 1e-3 (linear).
Report check_rate_regime(const IterationTrace& trace, Regime regime, double alpha = 1.0,
                          std::optional<double> h_star = std::nullopt);

nlohmann::json rate_fit_to_json(const RateFit& fit);

//! Problem generated to satisfy, by construction, the hypotheses of one of
//! the four linear-convergence scenarios (id 1..4 for (i)..(iv)). Scenarios
//! 3 and 4 require a zero initial multiplier, which initial_state()
//! provides.
struct ScenarioFixture {
  int id;
  uint64_t seed;
  double singular_margin;  // verified smallest singular value of the gated operator
  SeparableProblem problem;

  PadmmState initial_state() const;
};

ScenarioFixture make_scenario_fixture(int id, Index dim, uint64_t seed);

}  // namespace padmm

#endif  // PADMM_DIAGNOSTICS_HPP_
