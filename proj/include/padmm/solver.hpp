#ifndef PADMM_SOLVER_HPP_
#define PADMM_SOLVER_HPP_

#include <optional>
#include <utility>

#include "padmm/trace.hpp"

namespace padmm {

//! Solve the x-subproblem of the splitting iteration at the current state:
//!   argmin_x f(x) + <lam, A x> + (rho/2)||A x + B y - c||^2 + (1/2)||x - x_k||_P^2.
Vector solve_x_subproblem(const SeparableProblem& p, const PadmmState& s);

//! Solve the y-subproblem with the new x fixed.
Vector solve_y_subproblem(const SeparableProblem& p, const PadmmState& s,
                          const Vector& x_new);

//! One full iteration: x-update, y-update, dual update. The first-order
//! inclusions of both subproblems are certified; a residual above 1e-7
//! raises std::runtime_error carrying the residual.
PadmmState step(const SeparableProblem& p, const PadmmState& s);

//! Canonical KKT residual element at a state with valid step differences
//! (k >= 1).
KktResidualCertificate kkt_certificate(const SeparableProblem& p, const PadmmState& s);

struct ObjectiveFeasibility {
  double objective;    // +inf when outside an indicator domain
  double feasibility;  // ||A x + B y - c||
  bool finite;
};

ObjectiveFeasibility objective_and_feasibility(const SeparableProblem& p,
                                               const PadmmState& s);

//! Stopping rule: iterate until ||du^k||_G <= tol or max_iter steps.
//! A negative tol disables the tolerance test (run exactly max_iter steps).
struct StopRule {
  size_t max_iter = 1000;
  double tol = 1e-8;
};

struct RunOptions {
  bool store_iterates = false;
  std::optional<KktPoint> reference;
};

IterationTrace run(const SeparableProblem& p, const PadmmState& init,
                   const StopRule& stop, const RunOptions& options = {});

//! Ergodic iterate (xbar^k, ybar^k) = ((1/k) sum_{j=1..k} x^j, ...). The
//! trace must have been produced with iterate storage enabled.
std::pair<Vector, Vector> ergodic_iterate(const IterationTrace& trace, size_t k);

//! Evaluates H at a KKT point (used as H_* by diagnostics).
double objective_at(const SeparableProblem& p, const KktPoint& ref);

}  // namespace padmm

#endif  // PADMM_SOLVER_HPP_
