#include "padmm/illposed.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace padmm {

namespace {

constexpr double kCertTol = 1e-7;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_unit_quadratic(const ProxFunction& f) {
  return f.is_quadratic() && f.quadratic_center().isZero(0.0);
}

}  // namespace

InverseProblemSpec::InverseProblemSpec(LinearMap A, LinearMap L, ProxFunction constraint,
                                       ProxFunction f, double rho1, double rho2,
                                       double rho3, PsdMap Q, Vector b_delta,
                                       double delta)
    : A_(std::move(A)),
      L_(std::move(L)),
      constraint_(std::move(constraint)),
      f_(std::move(f)),
      rho1_(rho1),
      rho2_(rho2),
      rho3_(rho3),
      Q_(std::move(Q)),
      b_delta_(std::move(b_delta)),
      delta_(delta) {
  if (rho1_ <= 0.0 || rho2_ <= 0.0 || rho3_ <= 0.0)
    throw std::invalid_argument("inverse problem: penalties must be positive");
  if (delta_ < 0.0) throw std::invalid_argument("inverse problem: negative noise level");
  if (A_.cols() != L_.cols())
    throw std::invalid_argument("inverse problem: A and L domain mismatch");
  if (constraint_.dim() != A_.cols() || !constraint_.is_indicator())
    throw std::invalid_argument("inverse problem: constraint must be an indicator on X");
  if (f_.dim() != L_.rows())
    throw std::invalid_argument("inverse problem: penalty dimension mismatch");
  if (f_.convexity_modulus() <= 0.0)
    throw std::invalid_argument("inverse problem: penalty must be strongly convex");
  if (Q_.dim() != A_.cols())
    throw std::invalid_argument("inverse problem: Q dimension mismatch");
  if (b_delta_.size() != A_.rows())
    throw std::invalid_argument("inverse problem: data dimension mismatch");

  const Matrix ad = A_.to_dense();
  const Matrix ld = L_.to_dense();
  const Matrix normal = ad.transpose() * ad + ld.transpose() * ld;

  // Joint coercivity ||Ax||^2 + ||Lx||^2 >= c0 ||x||^2 with c0 > 0.
  Eigen::SelfAdjointEigenSolver<Matrix> eig(normal, Eigen::EigenvaluesOnly);
  c0_ = eig.eigenvalues().minCoeff();
  if (!(c0_ > 0.0))
    throw std::invalid_argument(
        "inverse problem: stacked (A; L) is not jointly coercive");

  Matrix general = rho1_ * ad.transpose() * ad + rho2_ * ld.transpose() * ld +
                   Q_.to_dense();
  general.diagonal().array() += rho3_;
  general_factor_ = Eigen::LLT<Matrix>(general);
  if (general_factor_.info() != Eigen::Success)
    throw std::invalid_argument("inverse problem: z-subproblem system is singular");

  rho1_At_b_ = rho1_ * A_.adjoint_apply(b_delta_);

  simplified_ok_ = L_.is_identity() && is_unit_quadratic(f_);
  if (simplified_ok_) {
    Matrix simplified = rho1_ * ad.transpose() * ad + Q_.to_dense();
    simplified.diagonal().array() += 1.0 + rho2_;
    simplified_factor_ = Eigen::LLT<Matrix>(simplified);
    if (simplified_factor_.info() != Eigen::Success)
      throw std::invalid_argument("inverse problem: simplified system is singular");
  }
}

const Eigen::LLT<Matrix>& InverseProblemSpec::simplified_factor() const {
  if (!simplified_ok_)
    throw std::logic_error(
        "simplified scheme requires L = I and the unit quadratic penalty");
  return simplified_factor_;
}

RegState RegState::zero(const InverseProblemSpec& spec) {
  RegState s;
  s.k = 0;
  s.z = Vector::Zero(spec.x_dim());
  s.y = Vector::Zero(spec.y_dim());
  s.x = Vector::Zero(spec.x_dim());
  s.lam = Vector::Zero(spec.data_dim());
  s.mu = Vector::Zero(spec.y_dim());
  s.nu = Vector::Zero(spec.x_dim());
  s.dz = s.z;
  s.dy = s.y;
  s.dx = s.x;
  s.dlam = s.lam;
  s.dmu = s.mu;
  s.dnu = s.nu;
  return s;
}

void validate_certificate(const SourceCertificate& cert, const InverseProblemSpec& spec,
                          const Vector& x_true, double tol) {
  const Vector y_true = spec.L().apply(x_true);
  const double res_mu = spec.f().subgradient_distance(y_true, cert.mu_dag);
  if (!(res_mu <= tol))
    throw std::invalid_argument("certificate: mu is not a subgradient of f at L x");
  const double res_nu = spec.constraint().subgradient_distance(x_true, cert.nu_dag);
  if (!(res_nu <= tol))
    throw std::invalid_argument("certificate: nu is not in the normal cone at x");
  const Vector stationarity = spec.L().adjoint_apply(cert.mu_dag) + cert.nu_dag +
                              spec.A().adjoint_apply(cert.lam_dag);
  if (!(stationarity.norm() <= tol))
    throw std::invalid_argument("certificate: stationarity identity violated");
}

RegState padmm2_step(const InverseProblemSpec& spec, const RegState& s) {
  RegState next;
  next.k = s.k + 1;

  // z-subproblem: (rho1 A^T A + rho2 L^T L + rho3 I + Q) z = rhs.
  const Vector rhs = spec.rho1_At_b() + spec.rho2() * spec.L().adjoint_apply(s.y) +
                     spec.rho3() * s.x + spec.Q().apply(s.z) -
                     spec.A().adjoint_apply(s.lam) - spec.L().adjoint_apply(s.mu) - s.nu;
  next.z = spec.general_factor().solve(rhs);

  const Vector az = spec.A().apply(next.z);
  const Vector lz = spec.L().apply(next.z);
  {
    const Vector residual =
        spec.A().adjoint_apply(s.lam + spec.rho1() * (az - spec.b_delta())) +
        spec.L().adjoint_apply(s.mu + spec.rho2() * (lz - s.y)) + s.nu +
        spec.rho3() * (next.z - s.x) + spec.Q().apply(next.z - s.z);
    if (!(residual.norm() <= kCertTol))
      throw std::runtime_error("z-subproblem certification failed: residual " +
                               std::to_string(residual.norm()));
  }

  next.y = spec.f().prox(1.0 / spec.rho2(), lz + s.mu / spec.rho2());
  next.x = spec.constraint().project(next.z + s.nu / spec.rho3());

  next.dlam = spec.rho1() * (az - spec.b_delta());
  next.dmu = spec.rho2() * (lz - next.y);
  next.dnu = spec.rho3() * (next.z - next.x);
  next.lam = s.lam + next.dlam;
  next.mu = s.mu + next.dmu;
  next.nu = s.nu + next.dnu;
  next.dz = next.z - s.z;
  next.dy = next.y - s.y;
  next.dx = next.x - s.x;
  return next;
}

RegState padmm26_step(const InverseProblemSpec& spec, const RegState& s) {
  const auto& factor = spec.simplified_factor();  // also validates compatibility
  RegState next;
  next.k = s.k + 1;

  const Vector rhs = spec.rho1_At_b() + spec.rho2() * s.x + spec.Q().apply(s.z) -
                     spec.A().adjoint_apply(s.lam) - s.nu;
  next.z = factor.solve(rhs);

  const Vector az = spec.A().apply(next.z);
  {
    const Vector residual =
        next.z + spec.A().adjoint_apply(s.lam + spec.rho1() * (az - spec.b_delta())) +
        s.nu + spec.rho2() * (next.z - s.x) + spec.Q().apply(next.z - s.z);
    if (!(residual.norm() <= kCertTol))
      throw std::runtime_error("z-subproblem certification failed: residual " +
                               std::to_string(residual.norm()));
  }

  next.x = spec.constraint().project(next.z + s.nu / spec.rho2());
  next.dlam = spec.rho1() * (az - spec.b_delta());
  next.dnu = spec.rho2() * (next.z - next.x);
  next.lam = s.lam + next.dlam;
  next.nu = s.nu + next.dnu;
  next.dz = next.z - s.z;
  next.dx = next.x - s.x;

  // The eliminated block: keep y mirroring z so traces stay meaningful.
  next.y = next.z;
  next.dy = next.y - s.y;
  next.mu = Vector::Zero(s.mu.size());
  next.dmu = next.mu - s.mu;
  return next;
}

double energy(const RegState& s, const InverseProblemSpec& spec, RegScheme scheme) {
  if (s.k < 1) throw std::invalid_argument("energy: undefined at k = 0");
  const double common = s.dlam.squaredNorm() / (2.0 * spec.rho1()) +
                        0.5 * spec.Q().quad(s.dz);
  if (scheme == RegScheme::kSimplified) {
    return common + s.dnu.squaredNorm() / (2.0 * spec.rho2()) +
           0.5 * spec.rho2() * s.dx.squaredNorm();
  }
  return common + s.dmu.squaredNorm() / (2.0 * spec.rho2()) +
         s.dnu.squaredNorm() / (2.0 * spec.rho3()) +
         0.5 * spec.rho2() * s.dy.squaredNorm() +
         0.5 * spec.rho3() * s.dx.squaredNorm();
}

double phi(const RegState& s, const SourceCertificate& cert, const Vector& x_true,
           const InverseProblemSpec& spec, RegScheme scheme) {
  const double common = (s.lam - cert.lam_dag).squaredNorm() / (2.0 * spec.rho1()) +
                        0.5 * spec.Q().quad(s.z - x_true);
  if (scheme == RegScheme::kSimplified) {
    return common + (s.nu - cert.nu_dag).squaredNorm() / (2.0 * spec.rho2()) +
           0.5 * spec.rho2() * (s.x - x_true).squaredNorm();
  }
  const Vector y_true = spec.L().apply(x_true);
  return common + (s.mu - cert.mu_dag).squaredNorm() / (2.0 * spec.rho2()) +
         (s.nu - cert.nu_dag).squaredNorm() / (2.0 * spec.rho3()) +
         0.5 * spec.rho2() * (s.y - y_true).squaredNorm() +
         0.5 * spec.rho3() * (s.x - x_true).squaredNorm();
}

size_t a_priori_stop(double delta, double c_stop) {
  if (!(delta > 0.0))
    throw std::invalid_argument("a_priori_stop: needs delta > 0; use max_iter instead");
  if (!(c_stop > 0.0)) throw std::invalid_argument("a_priori_stop: c_stop must be > 0");
  const double k = std::ceil(c_stop / delta);
  return std::max<size_t>(1, static_cast<size_t>(k));
}

RegRun run_regularized(const InverseProblemSpec& spec, RegScheme scheme, size_t iters,
                       const Vector* x_true, const SourceCertificate* cert) {
  if (iters < 1) throw std::invalid_argument("run_regularized: needs at least one step");
  if (scheme == RegScheme::kSimplified && !spec.simplified_compatible())
    throw std::invalid_argument("run_regularized: spec is not simplified-compatible");

  RegRun run;
  RegTrace& trace = run.trace;
  trace.has_phi = cert != nullptr && x_true != nullptr;
  trace.has_err = x_true != nullptr;
  Vector y_true;
  if (x_true) y_true = spec.L().apply(*x_true);

  auto record = [&](const RegState& s) {
    trace.energy.push_back(s.k == 0 ? kNaN : energy(s, spec, scheme));
    trace.phi.push_back(trace.has_phi ? phi(s, *cert, *x_true, spec, scheme) : kNaN);
    if (trace.has_err) {
      trace.err_x.push_back((s.x - *x_true).norm());
      trace.err_y.push_back((s.y - y_true).norm());
      trace.err_z.push_back((s.z - *x_true).norm());
    } else {
      trace.err_x.push_back(kNaN);
      trace.err_y.push_back(kNaN);
      trace.err_z.push_back(kNaN);
    }
    // ||A z - b_delta|| equals ||dlam|| / rho1 after each dual update.
    trace.feas.push_back(s.k == 0 ? (spec.A().apply(s.z) - spec.b_delta()).norm()
                                  : s.dlam.norm() / spec.rho1());
  };

  RegState state = RegState::zero(spec);
  record(state);
  for (size_t it = 0; it < iters; ++it) {
    state = scheme == RegScheme::kSimplified ? padmm26_step(spec, state)
                                             : padmm2_step(spec, state);
    record(state);
  }
  run.final_state = std::move(state);
  return run;
}

Report check_ip_bounds(const RegTrace& trace, const InverseProblemSpec& spec,
                       double delta) {
  return check_ip_bounds(trace, spec.rho1(), delta);
}

CheckResult check_energy_monotone(const RegTrace& trace) {
  CheckResult c;
  c.check = "energy_monotone";
  const auto& E = trace.energy;
  for (size_t k = 1; k + 1 < E.size(); ++k) {
    if (std::isnan(E[k]) || std::isnan(E[k + 1])) continue;
    const double v = E[k + 1] - E[k];
    ++c.checked;
    if (v > c.worst_violation) {
      c.worst_violation = v;
      c.index = static_cast<long>(k + 1);
    }
    if (v > 1e-9 * (1.0 + std::abs(E[k]))) c.pass = false;
  }
  return c;
}

Report check_ip_bounds(const RegTrace& trace, double rho1, double delta) {
  if (!trace.has_phi)
    throw std::invalid_argument("check_ip_bounds: trace carries no Phi records");
  Report report;
  const auto& E = trace.energy;
  const auto& Phi = trace.phi;
  const size_t n = trace.records();
  if (n < 2) throw std::invalid_argument("check_ip_bounds: trace too short");
  auto rel_slack = [](double rhs) { return 1e-8 * (1.0 + std::abs(rhs)); };

  {
    CheckResult c;
    c.check = "ip12_energy_bound";
    for (size_t k = 0; k + 1 < n; ++k) {
      const double rhs = Phi[k] - Phi[k + 1] + std::sqrt(2.0 * rho1 * Phi[k + 1]) * delta;
      const double v = E[k + 1] - rhs;
      ++c.checked;
      if (v > c.worst_violation) {
        c.worst_violation = v;
        c.index = static_cast<long>(k + 1);
      }
      if (v > rel_slack(rhs)) c.pass = false;
    }
    report.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.check = "ip13_phi_accumulation";
    double acc = 0.0;
    for (size_t k = 1; k < n; ++k) {
      acc += std::sqrt(2.0 * rho1 * Phi[k]);
      const double rhs = Phi[0] + acc * delta;
      const double v = Phi[k] - rhs;
      ++c.checked;
      if (v > c.worst_violation) {
        c.worst_violation = v;
        c.index = static_cast<long>(k);
      }
      if (v > rel_slack(rhs)) c.pass = false;
    }
    report.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.check = "ip14_phi_sqrt_growth";
    const double sqrt_phi0 = std::sqrt(Phi[0]);
    for (size_t k = 0; k < n; ++k) {
      const double rhs = sqrt_phi0 + std::sqrt(2.0 * rho1) * static_cast<double>(k) * delta;
      const double v = std::sqrt(Phi[k]) - rhs;
      ++c.checked;
      if (v > c.worst_violation) {
        c.worst_violation = v;
        c.index = static_cast<long>(k);
      }
      if (v > rel_slack(rhs)) c.pass = false;
    }
    report.checks.push_back(std::move(c));
  }
  {
    CheckResult c;
    c.check = "ip15_energy_decay";
    for (size_t k = 1; k < n; ++k) {
      const double kd = static_cast<double>(k);
      const double rhs = 2.0 * Phi[0] / kd + 2.5 * rho1 * kd * delta * delta;
      const double v = E[k] - rhs;
      ++c.checked;
      if (v > c.worst_violation) {
        c.worst_violation = v;
        c.index = static_cast<long>(k);
      }
      if (v > rel_slack(rhs)) c.pass = false;
    }
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace padmm
