#include "padmm/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace padmm {

namespace {

constexpr double kCertTol = 1e-7;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void certification_failure(const char* block, double residual) {
  throw std::runtime_error(std::string("subproblem certification failed (") + block +
                           "): inclusion residual " + std::to_string(residual));
}

}  // namespace

Vector solve_x_subproblem(const SeparableProblem& p, const PadmmState& s) {
  if (s.x.size() != p.x_dim() || s.y.size() != p.y_dim() || s.lam.size() != p.z_dim())
    throw std::invalid_argument("solve_x_subproblem: state dimension mismatch");
  if (p.x_strategy() == SubproblemStrategy::kLinearized) {
    const double tau = p.tau_x();
    const Vector residual = p.A().apply(s.x) + p.B().apply(s.y) - p.c();
    const Vector v = s.x - (1.0 / tau) * p.A().adjoint_apply(s.lam + p.rho() * residual);
    return p.f().prox(1.0 / tau, v);
  }
  // Direct: (I + rho A^T A + P) x = a + A^T(rho(c - B y) - lam) + P x_k.
  const Vector rhs = p.f().quadratic_center() +
                     p.A().adjoint_apply(p.rho() * (p.c() - p.B().apply(s.y)) - s.lam) +
                     p.P().apply(s.x);
  return p.x_factor().solve(rhs);
}

Vector solve_y_subproblem(const SeparableProblem& p, const PadmmState& s,
                          const Vector& x_new) {
  if (x_new.size() != p.x_dim())
    throw std::invalid_argument("solve_y_subproblem: dimension mismatch");
  if (p.y_strategy() == SubproblemStrategy::kLinearized) {
    const double tau = p.tau_y();
    const Vector residual = p.A().apply(x_new) + p.B().apply(s.y) - p.c();
    const Vector v = s.y - (1.0 / tau) * p.B().adjoint_apply(s.lam + p.rho() * residual);
    return p.g().prox(1.0 / tau, v);
  }
  const Vector rhs = p.g().quadratic_center() +
                     p.B().adjoint_apply(p.rho() * (p.c() - p.A().apply(x_new)) - s.lam) +
                     p.Q().apply(s.y);
  return p.y_factor().solve(rhs);
}

PadmmState step(const SeparableProblem& p, const PadmmState& s) {
  PadmmState next;
  next.k = s.k + 1;
  next.x = solve_x_subproblem(p, s);
  next.y = solve_y_subproblem(p, s, next.x);
  next.dx = next.x - s.x;
  next.dy = next.y - s.y;
  const Vector feas = p.A().apply(next.x) + p.B().apply(next.y) - p.c();
  next.dlam = p.rho() * feas;
  next.lam = s.lam + next.dlam;

  // Certify the first-order inclusions in their dual-updated form: the
  // residuals coincide with the prox/linear-solve optimality residuals up
  // to roundoff, so a failure indicates an inconsistent metric or a broken
  // factorization rather than ordinary floating-point noise.
  const Vector xi_x = -p.A().adjoint_apply(next.lam - p.rho() * p.B().apply(next.dy)) -
                      p.P().apply(next.dx);
  const double res_x = p.f().subgradient_distance(next.x, xi_x);
  if (!(res_x <= kCertTol)) certification_failure("x block", res_x);

  const Vector xi_y = -p.B().adjoint_apply(next.lam) - p.Q().apply(next.dy);
  const double res_y = p.g().subgradient_distance(next.y, xi_y);
  if (!(res_y <= kCertTol)) certification_failure("y block", res_y);

  return next;
}

KktResidualCertificate kkt_certificate(const SeparableProblem& p, const PadmmState& s) {
  if (s.k < 1)
    throw std::invalid_argument("kkt_certificate: undefined at k = 0");
  KktResidualCertificate cert;
  cert.rx = p.rho() * p.A().adjoint_apply(p.B().apply(s.dy)) - p.P().apply(s.dx);
  cert.ry = -p.Q().apply(s.dy);
  cert.rfeas = p.A().apply(s.x) + p.B().apply(s.y) - p.c();
  cert.norm_sq =
      cert.rx.squaredNorm() + cert.ry.squaredNorm() + cert.rfeas.squaredNorm();
  return cert;
}

ObjectiveFeasibility objective_and_feasibility(const SeparableProblem& p,
                                               const PadmmState& s) {
  const double h = p.f().value(s.x) + p.g().value(s.y);
  const double feas = (p.A().apply(s.x) + p.B().apply(s.y) - p.c()).norm();
  return {h, feas, std::isfinite(h)};
}

double objective_at(const SeparableProblem& p, const KktPoint& ref) {
  return p.f().value(ref.x) + p.g().value(ref.y);
}

IterationTrace run(const SeparableProblem& p, const PadmmState& init,
                   const StopRule& stop, const RunOptions& options) {
  if (stop.max_iter < 1) throw std::invalid_argument("run: max_iter must be >= 1");

  IterationTrace trace;
  const bool with_ref = options.reference.has_value();
  double h_star = 0.0;
  if (with_ref) h_star = objective_at(p, *options.reference);

  auto record = [&](const PadmmState& s, bool initial) {
    const auto of = objective_and_feasibility(p, s);
    trace.objective.push_back(of.objective);
    trace.feasibility.push_back(of.feasibility);
    if (initial) {
      trace.du_G2.push_back(kNaN);
      trace.kkt_norm2.push_back(kNaN);
      trace.dy_Q2.push_back(kNaN);
    } else {
      trace.du_G2.push_back(p.metric().seminorm_sq(s.dx, s.dy, s.dlam));
      trace.kkt_norm2.push_back(kkt_certificate(p, s).norm_sq);
      trace.dy_Q2.push_back(p.Q().quad(s.dy));
    }
    if (with_ref) {
      const KktPoint& r = *options.reference;
      const Vector ex = s.x - r.x;
      const Vector ey = s.y - r.y;
      const Vector el = s.lam - r.lam;
      trace.dist_ref_G2.push_back(p.metric().seminorm_sq(ex, ey, el));
      trace.dist_ref.push_back(
          std::sqrt(ex.squaredNorm() + ey.squaredNorm() + el.squaredNorm()));
      const Vector feas_vec = p.A().apply(s.x) + p.B().apply(s.y) - p.c();
      trace.lower_bound_gap.push_back(of.objective - h_star + r.lam.dot(feas_vec));
    }
    if (options.store_iterates) {
      trace.xs.push_back(s.x);
      trace.ys.push_back(s.y);
      trace.lams.push_back(s.lam);
    }
  };

  trace.stores_iterates = options.store_iterates;
  PadmmState state = init;
  record(state, true);
  for (size_t it = 0; it < stop.max_iter; ++it) {
    state = step(p, state);
    record(state, false);
    if (stop.tol >= 0.0 && std::sqrt(trace.du_G2.back()) <= stop.tol) {
      trace.converged = true;
      break;
    }
  }
  trace.final_state = std::move(state);
  return trace;
}

std::pair<Vector, Vector> ergodic_iterate(const IterationTrace& trace, size_t k) {
  if (!trace.stores_iterates)
    throw std::logic_error(
        "ergodic_iterate: trace was recorded without iterate storage; rerun with "
        "store_iterates enabled");
  if (k < 1 || k >= trace.xs.size())
    throw std::invalid_argument("ergodic_iterate: k out of range");
  Vector xbar = Vector::Zero(trace.xs[0].size());
  Vector ybar = Vector::Zero(trace.ys[0].size());
  for (size_t j = 1; j <= k; ++j) {
    xbar += trace.xs[j];
    ybar += trace.ys[j];
  }
  const double inv = 1.0 / static_cast<double>(k);
  return {inv * xbar, inv * ybar};
}

}  // namespace padmm
