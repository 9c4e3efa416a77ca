#include "padmm/gravity.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>

namespace padmm {

double gravity_kernel(double s, double t, double depth) {
  const double u = s - t;
  return depth * std::pow(depth * depth + u * u, -1.5);
}

Vector trapezoid_weights(Index n) {
  if (n < 2) throw std::invalid_argument("trapezoid_weights: need at least two points");
  const double h = 1.0 / static_cast<double>(n - 1);
  Vector w = Vector::Constant(n, h);
  w[0] = 0.5 * h;
  w[n - 1] = 0.5 * h;
  return w;
}

LinearMap build_kernel_matrix(Index n, double depth) {
  if (n < 2) throw std::invalid_argument("build_kernel_matrix: need at least two points");
  if (depth <= 0.0) throw std::invalid_argument("build_kernel_matrix: depth must be > 0");
  const Vector w = trapezoid_weights(n);
  const double h = 1.0 / static_cast<double>(n - 1);
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    const double ti = i * h;
    for (Index j = 0; j < n; ++j) {
      const double sj = j * h;
      a(i, j) = w[j] * gravity_kernel(sj, ti, depth);
    }
  }
  return LinearMap::dense(std::move(a));
}

GroundTruth make_ground_truth(const LinearMap& op, const Vector& omega) {
  GroundTruth gt;
  const Vector astar_omega = op.adjoint_apply(omega);
  gt.x_true = astar_omega.cwiseMax(0.0);
  gt.b = op.apply(gt.x_true);
  gt.cert.mu_dag = gt.x_true;
  gt.cert.nu_dag = astar_omega - gt.x_true;  // <= 0, complementary to x_true
  gt.cert.lam_dag = -omega;
  return gt;
}

uint64_t derive_seed(uint64_t master, size_t index) {
  // splitmix64 over the pair
  uint64_t z = master + 0x9e3779b97f4a7c15ull * (static_cast<uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Vector add_noise(const Vector& b, double delta, uint64_t seed, const Vector& weights) {
  if (delta < 0.0) throw std::invalid_argument("add_noise: negative noise level");
  if (delta == 0.0) return b;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector xi(b.size());
  for (Index i = 0; i < b.size(); ++i) xi[i] = gauss(rng);
  // Normalize the grid function to unit h-weighted norm, then move to the
  // transformed representation where that norm is Euclidean.
  Vector xi_t = weights.cwiseSqrt().cwiseProduct(xi);
  const double scale = xi_t.norm();
  if (scale == 0.0) throw std::runtime_error("add_noise: degenerate noise draw");
  return b + (delta / scale) * xi_t;
}

size_t iteration_cap(double delta) {
  if (delta >= 1e-2) return 1000;
  if (delta >= 1e-4) return 10000;
  if (delta >= 1e-5) return 100000;
  return 1000000;
}

Vector GravityProblem::noisy_data(double delta, uint64_t seed) const {
  return add_noise(b, delta, seed, weights);
}

InverseProblemSpec GravityProblem::spec_for(const Vector& b_delta, double delta) const {
  const Index n = op.cols();
  return InverseProblemSpec(op, LinearMap::identity(n), ProxFunction::nonneg(n),
                            ProxFunction::quadratic(Vector::Zero(n)), config.rho1,
                            config.rho2, config.rho2,
                            PsdMap::scaled_identity(n, config.q_scale), b_delta, delta);
}

GravityProblem make_gravity_problem(const GravityConfig& config) {
  if (config.n < 2) throw std::invalid_argument("gravity: grid too small");
  Vector weights = trapezoid_weights(config.n);

  // Symmetrize the quadrature operator: S = W^(1/2) kappa W^(1/2), i.e.
  // conjugate the function-value matrix kappa*W by W^(1/2).
  const Vector sqrt_w = weights.cwiseSqrt();
  Matrix kernel = build_kernel_matrix(config.n, config.depth).to_dense();
  for (Index j = 0; j < config.n; ++j) kernel.col(j) /= sqrt_w[j];
  for (Index i = 0; i < config.n; ++i) kernel.row(i) *= sqrt_w[i];
  LinearMap op = LinearMap::dense(std::move(kernel));

  const double h = 1.0 / static_cast<double>(config.n - 1);
  Vector omega(config.n);
  for (Index i = 0; i < config.n; ++i) {
    const double t = i * h;
    omega[i] = t * t * t * (0.9 - t) * (t - 0.35);
  }
  omega = sqrt_w.cwiseProduct(omega);

  GroundTruth gt = make_ground_truth(op, omega);
  return GravityProblem{config,
                        std::move(weights),
                        std::move(op),
                        std::move(omega),
                        std::move(gt.x_true),
                        std::move(gt.b),
                        std::move(gt.cert)};
}

GravityRun run_gravity_level(const GravityProblem& problem, double delta,
                             size_t level_index, size_t max_iter_override) {
  GravityRun out;
  out.cap = max_iter_override > 0 ? max_iter_override : iteration_cap(delta);
  const Vector b_delta =
      problem.noisy_data(delta, derive_seed(problem.config.seed, level_index));
  const InverseProblemSpec spec = problem.spec_for(b_delta, delta);

  RegRun run = run_regularized(spec, RegScheme::kSimplified, out.cap, &problem.x_true,
                               &problem.cert);
  out.trace = std::move(run.trace);

  const double x_norm = problem.x_true.norm();
  out.rel_err.resize(out.trace.err_x.size());
  for (size_t k = 0; k < out.rel_err.size(); ++k)
    out.rel_err[k] = out.trace.err_x[k] / x_norm;

  Table1Row row;
  row.delta = delta;
  row.err_min = out.rel_err[1];
  row.iter_min = 1;
  for (size_t k = 2; k < out.rel_err.size(); ++k) {
    if (out.rel_err[k] < row.err_min) {
      row.err_min = out.rel_err[k];
      row.iter_min = k;
    }
  }
  row.ratio_half = row.err_min / std::sqrt(delta);
  row.ratio_quarter = row.err_min / std::pow(delta, 0.25);
  row.complete = row.iter_min < out.cap && out.rel_err.back() > row.err_min;
  out.row = row;
  return out;
}

std::vector<GravityRun> run_table1(const GravityProblem& problem) {
  std::vector<double> levels = problem.config.noise_levels;
  if (problem.config.deep) {
    levels.push_back(1e-5);
    levels.push_back(1e-6);
  }
  std::vector<GravityRun> runs;
  runs.reserve(levels.size());
  for (size_t i = 0; i < levels.size(); ++i)
    runs.push_back(run_gravity_level(problem, levels[i], i));
  return runs;
}

void write_table1_csv(const std::string& path, const std::vector<Table1Row>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open table file: " + path);
  out << "delta,err_min,iter_min,ratio_half,ratio_quarter\n";
  char buf[196];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.6e,%.6e,%zu,%.6f,%.6f\n", r.delta, r.err_min,
                  r.iter_min, r.ratio_half, r.ratio_quarter);
    out << buf;
  }
}

}  // namespace padmm
