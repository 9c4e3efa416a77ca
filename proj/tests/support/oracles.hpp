// Test-side oracles, independent of the solver paths they check.
#ifndef PADMM_TESTS_ORACLES_HPP_
#define PADMM_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <random>

#include "padmm/diagnostics.hpp"

namespace padmm::testing {

//! Direct stationarity-system solve for problems with unit quadratic f and
//! g: the KKT conditions
//!   x - a_f + A^T lam = 0,  y - a_g + B^T lam = 0,  A x + B y = c
//! assembled as one dense linear system. Requires [A B] full row rank.
inline KktPoint solve_quadratic_kkt(const SeparableProblem& p) {
  const Matrix a = p.A().to_dense();
  const Matrix b = p.B().to_dense();
  const Index n = a.cols(), m = b.cols(), r = a.rows();
  Matrix sys = Matrix::Zero(n + m + r, n + m + r);
  sys.block(0, 0, n, n).setIdentity();
  sys.block(n, n, m, m).setIdentity();
  sys.block(0, n + m, n, r) = a.transpose();
  sys.block(n, n + m, m, r) = b.transpose();
  sys.block(n + m, 0, r, n) = a;
  sys.block(n + m, n, r, m) = b;
  Vector rhs(n + m + r);
  rhs.segment(0, n) = p.f().quadratic_center();
  rhs.segment(n, m) = p.g().quadratic_center();
  rhs.segment(n + m, r) = p.c();
  const Vector sol = Eigen::PartialPivLU<Matrix>(sys).solve(rhs);
  return KktPoint{sol.segment(0, n), sol.segment(n, m), sol.segment(n + m, r)};
}

//! Reference KKT point for nonsmooth instances: a long high-precision run.
inline KktPoint long_run_reference(const SeparableProblem& p, size_t max_iter = 200000,
                                   double tol = 1e-12) {
  const IterationTrace t = run(p, PadmmState::zero(p), StopRule{max_iter, tol});
  return KktPoint{t.final_state.x, t.final_state.y, t.final_state.lam};
}

//! Entrywise matrix-vector product, the brute-force oracle for apply().
inline Vector matvec_oracle(const Matrix& m, const Vector& v) {
  Vector out = Vector::Zero(m.rows());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline Vector gaussian_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

inline Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  return m;
}

}  // namespace padmm::testing

#endif  // PADMM_TESTS_ORACLES_HPP_
