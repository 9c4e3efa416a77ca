#ifndef PADMM_GRAVITY_HPP_
#define PADMM_GRAVITY_HPP_

#include "padmm/illposed.hpp"

namespace padmm {

//! Kernel of the 1-D gravity surveying equation, kappa(s, t) = d (d^2 + (s-t)^2)^(-3/2).
double gravity_kernel(double s, double t, double depth);

//! Trapezoidal quadrature weights on the uniform grid of [0, 1] with N
//! points: h/2 at the endpoints, h inside, h = 1/(N-1).
Vector trapezoid_weights(Index n);

//! Quadrature discretization of the integral operator on function values:
//! entry (i, j) is w_j * kappa(s_j, t_i).
LinearMap build_kernel_matrix(Index n, double depth);

//! Ground truth generated from a dual element omega: x = max(A* omega, 0),
//! b = A x, with the source certificate (mu = x, nu = A* omega - x,
//! lam = -omega). Generic over the supplied operator.
struct GroundTruth {
  Vector x_true, b;
  SourceCertificate cert;
};

GroundTruth make_ground_truth(const LinearMap& op, const Vector& omega);

struct GravityConfig {
  Index n = 600;
  double depth = 0.1;
  double rho1 = 10.0;
  double rho2 = 1.0;
  double q_scale = 0.0;  // proximal metric Q = q_scale * I, zero by default
  uint64_t seed = 0;
  std::vector<double> noise_levels = {1e-1, 1e-2, 1e-3, 1e-4};
  bool deep = false;  // adds the 1e-5 and 1e-6 rows
};

//! Assembled benchmark. All vectors live in the weight-transformed
//! representation v -> W^(1/2) v, under which the Euclidean inner product
//! equals the h-weighted L^2 inner product of the grid functions; the
//! operator is the symmetrized W^(1/2) kappa W^(1/2). Noise levels and
//! relative errors therefore match the continuum quantities.
struct GravityProblem {
  GravityConfig config;
  Vector weights;
  LinearMap op;
  Vector omega;  // transformed dual element
  Vector x_true, b;
  SourceCertificate cert;

  //! Noisy data b + delta * xi with ||xi|| = 1 in the h-weighted norm.
  Vector noisy_data(double delta, uint64_t seed) const;

  InverseProblemSpec spec_for(const Vector& b_delta, double delta) const;
};

GravityProblem make_gravity_problem(const GravityConfig& config);

//! Gaussian grid-function noise scaled to unit h-weighted norm, returned in
//! the transformed representation; deterministic in the seed.
Vector add_noise(const Vector& b, double delta, uint64_t seed, const Vector& weights);

//! Iteration budget per noise level.
size_t iteration_cap(double delta);

//! Stream seed for one noise level, derived from (master seed, level index).
uint64_t derive_seed(uint64_t master, size_t index);

struct Table1Row {
  double delta = 0.0;
  double err_min = 0.0;       // smallest relative error over k >= 1
  size_t iter_min = 0;        // iteration attaining it
  double ratio_half = 0.0;    // err_min / delta^(1/2)
  double ratio_quarter = 0.0; // err_min / delta^(1/4)
  bool complete = false;      // error curve turned upward before the cap
};

struct GravityRun {
  Table1Row row;
  RegTrace trace;
  std::vector<double> rel_err;  // per k, ||x^k - x_true|| / ||x_true||
  size_t cap = 0;
};

//! Runs the simplified scheme from the zero start for one noise level.
GravityRun run_gravity_level(const GravityProblem& problem, double delta,
                             size_t level_index, size_t max_iter_override = 0);

std::vector<GravityRun> run_table1(const GravityProblem& problem);

void write_table1_csv(const std::string& path, const std::vector<Table1Row>& rows);

}  // namespace padmm

#endif  // PADMM_GRAVITY_HPP_
