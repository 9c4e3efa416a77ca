#include "padmm/problem.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace padmm {

namespace {

void validate_strategy(const char* block, SubproblemStrategy s, const ProxFunction& h,
                       const PsdMap& metric, const LinearMap& op, double rho) {
  if (s == SubproblemStrategy::kDirect) {
    if (!h.is_quadratic())
      throw std::invalid_argument(std::string(block) +
                                  ": direct strategy requires a quadratic objective");
    return;
  }
  // Linearized: the metric must be tau*I - rho*M^T M so the subproblem is a
  // single prox call. The shape and weight are checked here; the inclusion
  // certificate verifies the rest at every step.
  if (metric.kind() != PsdMap::Kind::kShiftedGram)
    throw std::invalid_argument(std::string(block) +
                                ": linearized strategy requires a shifted-gram metric");
  if (metric.weight() != rho)
    throw std::invalid_argument(std::string(block) +
                                ": linearized metric weight must equal rho");
  if (metric.base().rows() != op.rows() || metric.base().cols() != op.cols())
    throw std::invalid_argument(std::string(block) +
                                ": linearized metric operator dimensions mismatch");
}

Eigen::LLT<Matrix> factor_direct(const LinearMap& op, const PsdMap& metric, double rho) {
  const Matrix opd = op.to_dense();
  Matrix sys = rho * opd.transpose() * opd + metric.to_dense();
  sys += Matrix::Identity(sys.rows(), sys.cols());  // unit quadratic objective
  Eigen::LLT<Matrix> llt(sys);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("direct subproblem system is not positive definite");
  return llt;
}

}  // namespace

SeparableProblem::SeparableProblem(LinearMap A, LinearMap B, Vector c, ProxFunction f,
                                   ProxFunction g, PsdMap P, PsdMap Q, double rho,
                                   SubproblemStrategy x_strategy,
                                   SubproblemStrategy y_strategy)
    : A_(std::move(A)),
      B_(std::move(B)),
      c_(std::move(c)),
      f_(std::move(f)),
      g_(std::move(g)),
      P_(std::move(P)),
      Q_(std::move(Q)),
      rho_(rho),
      x_strategy_(x_strategy),
      y_strategy_(y_strategy),
      metric_(GMetric::from_parts(P_, Q_, B_, rho)) {
  if (rho_ <= 0.0) throw std::invalid_argument("problem: rho must be positive");
  if (A_.rows() != B_.rows() || A_.rows() != c_.size())
    throw std::invalid_argument("problem: constraint dimensions disagree");
  if (f_.dim() != A_.cols() || g_.dim() != B_.cols())
    throw std::invalid_argument("problem: objective dimensions disagree");
  if (P_.dim() != A_.cols() || Q_.dim() != B_.cols())
    throw std::invalid_argument("problem: proximal metric dimensions disagree");

  validate_strategy("x block", x_strategy_, f_, P_, A_, rho_);
  validate_strategy("y block", y_strategy_, g_, Q_, B_, rho_);

  if (x_strategy_ == SubproblemStrategy::kDirect) x_factor_ = factor_direct(A_, P_, rho_);
  if (y_strategy_ == SubproblemStrategy::kDirect) y_factor_ = factor_direct(B_, Q_, rho_);

  const double normA = A_.operator_norm();
  gamma_ = std::max({2.0 * P_.operator_norm(), 2.0 * rho_ * normA * normA,
                     Q_.operator_norm(), 1.0 / rho_});
}

double SeparableProblem::tau_x() const {
  if (x_strategy_ != SubproblemStrategy::kLinearized)
    throw std::logic_error("tau_x: x block is not linearized");
  return P_.shift();
}

double SeparableProblem::tau_y() const {
  if (y_strategy_ != SubproblemStrategy::kLinearized)
    throw std::logic_error("tau_y: y block is not linearized");
  return Q_.shift();
}

PadmmState PadmmState::initial(Vector x0, Vector y0, Vector lam0) {
  PadmmState s;
  s.k = 0;
  s.dx = Vector::Zero(x0.size());
  s.dy = Vector::Zero(y0.size());
  s.dlam = Vector::Zero(lam0.size());
  s.x = std::move(x0);
  s.y = std::move(y0);
  s.lam = std::move(lam0);
  return s;
}

PadmmState PadmmState::zero(const SeparableProblem& p) {
  return initial(Vector::Zero(p.x_dim()), Vector::Zero(p.y_dim()),
                 Vector::Zero(p.z_dim()));
}

}  // namespace padmm
