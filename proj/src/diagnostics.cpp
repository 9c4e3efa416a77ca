#include "padmm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <random>
#include <stdexcept>

namespace padmm {

namespace {

double slack(double magnitude) { return 1e-9 * (1.0 + std::abs(magnitude)); }

struct Fitted {
  double slope, intercept, r_squared;
};

Fitted least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const size_t n = xs.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  const double slope = sxx > 0 ? sxy / sxx : 0.0;
  double ss_res = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (my + slope * (xs[i] - mx));
    ss_res += r * r;
  }
  const double r2 = syy > 1e-300 ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
  return {slope, my - slope * mx, r2};
}

}  // namespace

std::vector<double> positive_prefix(const std::vector<double>& series, double floor_rel) {
  double top = 0.0;
  for (double v : series) top = std::max(top, v);
  const double floor = floor_rel * top;
  std::vector<double> out;
  for (double v : series) {
    if (!(v > floor)) break;
    out.push_back(v);
  }
  return out;
}

RateFit fit_rate(const std::vector<double>& series, RateModel model,
                 double window_fraction) {
  const size_t n = series.size();
  if (n < 20) throw std::invalid_argument("fit_rate: series shorter than 20 entries");
  if (!(window_fraction > 0.0 && window_fraction <= 1.0))
    throw std::invalid_argument("fit_rate: window fraction must lie in (0, 1]");

  const bool all_zero =
      std::all_of(series.begin(), series.end(), [](double v) { return v == 0.0; });
  if (all_zero) {
    RateFit fit;
    fit.model = model;
    fit.exact_convergence = true;
    fit.r_squared = 1.0;
    fit.param = model == RateModel::kGeometric ? 0.0 : 0.0;
    return fit;
  }
  for (double v : series)
    if (!(v > 0.0)) throw std::invalid_argument("fit_rate: nonpositive entry");

  size_t count = static_cast<size_t>(std::llround(window_fraction * n));
  count = std::min(n, std::max<size_t>(count, 10));
  const size_t begin = n - count;

  std::vector<double> xs(count), ys(count);
  for (size_t i = 0; i < count; ++i) {
    const double k = static_cast<double>(begin + i + 1);  // series[i] holds k = i+1
    xs[i] = model == RateModel::kGeometric ? k : std::log(k);
    ys[i] = std::log(series[begin + i]);
  }
  const Fitted lsq = least_squares(xs, ys);

  RateFit fit;
  fit.model = model;
  fit.window_begin = begin;
  fit.window_end = n;
  fit.r_squared = lsq.r_squared;
  fit.param = model == RateModel::kGeometric ? std::exp(lsq.slope) : -lsq.slope;
  return fit;
}

bool Report::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.pass; });
}

nlohmann::json Report::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"check", c.check},
                   {"pass", c.pass},
                   {"worst_violation", c.worst_violation},
                   {"index", c.index},
                   {"checked", c.checked}});
  }
  return arr;
}

nlohmann::json rate_fit_to_json(const RateFit& fit) {
  return {{"model", fit.model == RateModel::kGeometric ? "geometric" : "power"},
          {"param", fit.param},
          {"r2", fit.r_squared},
          {"window", {fit.window_begin, fit.window_end}},
          {"exact_convergence", fit.exact_convergence}};
}

namespace {

//! Scans pairs (k, k+1) from `from`; viol(k) > slack(k) fails the check.
template <typename Violation, typename Slack>
CheckResult scan(const std::string& name, size_t from, size_t to, Violation viol,
                 Slack slack_at) {
  CheckResult result;
  result.check = name;
  for (size_t k = from; k < to; ++k) {
    const double v = viol(k);
    if (std::isnan(v)) continue;
    ++result.checked;
    if (v > result.worst_violation) {
      result.worst_violation = v;
      result.index = static_cast<long>(k);
    }
    if (v > slack_at(k)) result.pass = false;
  }
  return result;
}

}  // namespace

Report check_monotonicity_suite(const IterationTrace& trace, std::optional<double> gamma) {
  Report report;
  const auto& du = trace.du_G2;
  const size_t n = trace.records();
  if (n < 2) throw std::invalid_argument("check_monotonicity_suite: trace too short");

  report.checks.push_back(scan(
      "du_G2_monotone", 1, n - 1,
      [&](size_t k) { return du[k + 1] - du[k]; },
      [&](size_t k) { return slack(du[k]); }));

  if (!trace.dist_ref_G2.empty()) {
    const auto& dist = trace.dist_ref_G2;
    report.checks.push_back(scan(
        "dist_ref_G2_monotone", 0, n - 1,
        [&](size_t k) { return dist[k + 1] - dist[k]; },
        [&](size_t k) { return slack(dist[k]); }));

    report.checks.push_back(scan(
        "telescoping", 1, n - 1,
        [&](size_t k) {
          const double rhs =
              (dist[k] + trace.dy_Q2[k]) - (dist[k + 1] + trace.dy_Q2[k + 1]);
          return du[k + 1] - rhs;
        },
        [&](size_t k) { return slack(dist[k] + trace.dy_Q2[k]); }));
  }

  if (!trace.lower_bound_gap.empty()) {
    report.checks.push_back(scan(
        "objective_lower_bound", 0, n,
        [&](size_t k) {
          const double g = trace.lower_bound_gap[k];
          return std::isfinite(g) ? -g : std::nan("");
        },
        [&](size_t) { return 1e-9; }));
  }

  if (gamma.has_value()) {
    report.checks.push_back(scan(
        "kkt_gamma_bound", 1, n,
        [&](size_t k) { return trace.kkt_norm2[k] - *gamma * du[k]; },
        [&](size_t k) { return 1e-9 * (1.0 + *gamma * du[k]); }));
  }

  return report;
}

CheckResult check_checkpoint_decay(const IterationTrace& trace) {
  CheckResult result;
  result.check = "checkpoint_decay";
  const size_t K = trace.iterations();
  if (K < 8) throw std::invalid_argument("check_checkpoint_decay: trace too short");
  const size_t ks[3] = {K / 4, K / 2, K};
  double prev = static_cast<double>(ks[0]) * trace.du_G2[ks[0]];
  result.checked = 2;
  for (int i = 1; i < 3; ++i) {
    const double cur = static_cast<double>(ks[i]) * trace.du_G2[ks[i]];
    const double v = cur - prev;
    if (v > result.worst_violation) {
      result.worst_violation = v;
      result.index = static_cast<long>(ks[i]);
    }
    if (v > slack(prev)) result.pass = false;
    prev = cur;
  }
  return result;
}

namespace {

CheckResult rate_check(const std::string& name, const std::vector<double>& raw,
                       Regime regime, double alpha) {
  CheckResult result;
  result.check = name;
  if (raw.size() < 20)
    throw std::invalid_argument("check_rate_regime: insufficient data");
  const std::vector<double> series = positive_prefix(raw);
  result.checked = series.size();
  if (series.size() < 20) {
    // The series hit the floor: the run converged exactly, which satisfies
    // every decay regime.
    return result;
  }
  if (regime == Regime::kLinear) {
    const RateFit fit = fit_rate(series, RateModel::kGeometric);
    if (fit.exact_convergence) return result;
    const double r2_deficit = std::max(0.0, 0.9 - fit.r_squared);
    const double q_excess = std::max(0.0, fit.param - (1.0 - 1e-3));
    result.worst_violation = std::max(r2_deficit, q_excess);
    result.pass = r2_deficit == 0.0 && q_excess == 0.0;
    return result;
  }
  const double beta_min = regime == Regime::kSublinear ? 0.5 : 0.5 / (1.0 - alpha);
  const RateFit fit = fit_rate(series, RateModel::kPower);
  if (fit.exact_convergence) return result;
  result.worst_violation = std::max(0.0, beta_min - fit.param);
  result.pass = result.worst_violation == 0.0;
  return result;
}

}  // namespace

Report check_rate_regime(const IterationTrace& trace, Regime regime, double alpha,
                          std::optional<double> h_star) {
  if (regime == Regime::kHolder && !(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("check_rate_regime: Holder exponent must lie in (0,1)");
  Report report;
  std::vector<double> feas(trace.feasibility.begin() + 1, trace.feasibility.end());
  report.checks.push_back(rate_check("rate_feasibility", feas, regime, alpha));
  if (h_star.has_value()) {
    std::vector<double> obj;
    for (size_t k = 1; k < trace.records(); ++k)
      obj.push_back(std::abs(trace.objective[k] - *h_star));
    report.checks.push_back(rate_check("rate_objective", obj, regime, alpha));
  }
  return report;
}

namespace {

Matrix random_orthogonal(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  return q;
}

//! rows x cols matrix with singular values drawn from [lo, hi].
Matrix random_with_singular_range(Index rows, Index cols, double lo, double hi,
                                  std::mt19937_64& rng) {
  const Index r = std::min(rows, cols);
  std::uniform_real_distribution<double> unif(lo, hi);
  Matrix u = random_orthogonal(rows, rng);
  Matrix v = random_orthogonal(cols, rng);
  Matrix s = Matrix::Zero(rows, cols);
  for (Index i = 0; i < r; ++i) s(i, i) = unif(rng);
  return u * s * v.transpose();
}

Vector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

double smallest_singular_value(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().minCoeff();
}

SeparableProblem quadratic_problem(LinearMap a, LinearMap b, Vector c, Vector fa,
                                   Vector ga, double rho) {
  const Index n = a.cols(), m = b.cols();
  return SeparableProblem(std::move(a), std::move(b), std::move(c),
                          ProxFunction::quadratic(std::move(fa)),
                          ProxFunction::quadratic(std::move(ga)), PsdMap::zero(n),
                          PsdMap::zero(m), rho, SubproblemStrategy::kDirect,
                          SubproblemStrategy::kDirect);
}

}  // namespace

PadmmState ScenarioFixture::initial_state() const { return PadmmState::zero(problem); }

ScenarioFixture make_scenario_fixture(int id, Index dim, uint64_t seed) {
  if (dim < 2 || dim > 50)
    throw std::invalid_argument("make_scenario_fixture: dim must lie in [2, 50]");
  std::mt19937_64 rng(seed ^ 0x5bf03635u ^ (static_cast<uint64_t>(id) << 32));

  switch (id) {
    case 1: {
      // sigma_g > 0, A and B* coercive, grad g Lipschitz: square full-rank A
      // with a documented singular-value margin, B = I, quadratic objectives.
      const Matrix a = random_with_singular_range(dim, dim, 0.4, 1.2, rng);
      const double margin = smallest_singular_value(a);
      if (margin < 0.1)
        throw std::logic_error("scenario i: generated operator lost its margin");
      SeparableProblem p = quadratic_problem(
          LinearMap::dense(a), LinearMap::identity(dim), random_vector(dim, rng),
          random_vector(dim, rng), random_vector(dim, rng), 1.0);
      return ScenarioFixture{id, seed, margin, std::move(p)};
    }
    case 2: {
      // sigma_f, sigma_g > 0, B* coercive: B = I, generic A.
      const Index p = std::max<Index>(2, dim / 2 + 1);
      std::normal_distribution<double> gauss(0.0, 1.0);
      Matrix a(p, dim);
      for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < dim; ++j) a(i, j) = gauss(rng) / std::sqrt(double(dim));
      SeparableProblem prob = quadratic_problem(
          LinearMap::dense(a), LinearMap::identity(p), random_vector(p, rng),
          random_vector(dim, rng), random_vector(p, rng), 1.0);
      return ScenarioFixture{id, seed, 1.0, std::move(prob)};
    }
    case 3: {
      // lambda0 = 0, sigma_f, sigma_g > 0, stacked [A B] with a full-row-rank
      // margin; both objectives smooth quadratics.
      const Index n = dim, m = dim, p = dim;
      const Matrix stacked = random_with_singular_range(p, n + m, 0.4, 1.2, rng);
      const double margin = smallest_singular_value(stacked);
      SeparableProblem prob = quadratic_problem(
          LinearMap::dense(stacked.leftCols(n)), LinearMap::dense(stacked.rightCols(m)),
          random_vector(p, rng), random_vector(n, rng), random_vector(m, rng), 1.0);
      return ScenarioFixture{id, seed, margin, std::move(prob)};
    }
    case 4: {
      // lambda0 = 0, sigma_g > 0, A coercive (full column rank with margin),
      // [A B] keeps a row-rank margin so the KKT system stays nonsingular.
      const Index n = dim, p = dim + 2, m = dim;
      const Matrix a = random_with_singular_range(p, n, 0.4, 1.2, rng);
      Matrix b;
      double margin = 0.0;
      for (int attempt = 0; attempt < 32; ++attempt) {
        b = random_with_singular_range(p, m, 0.4, 1.2, rng);
        Matrix stacked(p, n + m);
        stacked << a, b;
        margin = smallest_singular_value(stacked);
        if (margin >= 0.05) break;
      }
      if (margin < 0.05)
        throw std::logic_error("scenario iv: could not reach a row-rank margin");
      SeparableProblem prob = quadratic_problem(
          LinearMap::dense(a), LinearMap::dense(b), random_vector(p, rng),
          random_vector(n, rng), random_vector(m, rng), 1.0);
      return ScenarioFixture{id, seed, std::min(margin, smallest_singular_value(a)),
                             std::move(prob)};
    }
    default:
      throw std::invalid_argument("make_scenario_fixture: scenario id must be 1..4");
  }
}

}  // namespace padmm
