#ifndef PADMM_PROBLEM_HPP_
#define PADMM_PROBLEM_HPP_

#include <Eigen/Cholesky>
#include <optional>

#include "padmm/prox.hpp"
#include "padmm/psd_map.hpp"

namespace padmm {

//! How a primal subproblem of the splitting iteration is solved.
//!
//! kDirect assembles and factors the regularized normal system once per
//! problem and requires a quadratic objective block. kLinearized requires
//! the proximal metric to follow the tau*I - rho*M^T M pattern, which
//! collapses the subproblem to a single prox call.
enum class SubproblemStrategy { kDirect, kLinearized };

//! Two-block linearly constrained problem
//!   minimize f(x) + g(y)  subject to  A x + B y = c
//! together with the penalty rho, the proximal metrics P and Q, and the
//! per-block solve strategies. Immutable after construction; the direct
//! factorizations are built eagerly so instances can be shared across
//! threads.
class SeparableProblem {
 public:
  SeparableProblem(LinearMap A, LinearMap B, Vector c, ProxFunction f,
                   ProxFunction g, PsdMap P, PsdMap Q, double rho,
                   SubproblemStrategy x_strategy, SubproblemStrategy y_strategy);

  const LinearMap& A() const { return A_; }
  const LinearMap& B() const { return B_; }
  const Vector& c() const { return c_; }
  const ProxFunction& f() const { return f_; }
  const ProxFunction& g() const { return g_; }
  const PsdMap& P() const { return P_; }
  const PsdMap& Q() const { return Q_; }
  double rho() const { return rho_; }
  SubproblemStrategy x_strategy() const { return x_strategy_; }
  SubproblemStrategy y_strategy() const { return y_strategy_; }

  Index x_dim() const { return A_.cols(); }
  Index y_dim() const { return B_.cols(); }
  Index z_dim() const { return c_.size(); }

  const GMetric& metric() const { return metric_; }
  //! gamma := max{2||P||, 2 rho ||A||^2, ||Q||, 1/rho}, the constant of the
  //! KKT-residual bound.
  double gamma() const { return gamma_; }

  double tau_x() const;  // linearized x metric shift
  double tau_y() const;

  const Eigen::LLT<Matrix>& x_factor() const { return x_factor_; }
  const Eigen::LLT<Matrix>& y_factor() const { return y_factor_; }

 private:
  LinearMap A_, B_;
  Vector c_;
  ProxFunction f_, g_;
  PsdMap P_, Q_;
  double rho_;
  SubproblemStrategy x_strategy_, y_strategy_;

  GMetric metric_;
  double gamma_ = 0.0;
  Eigen::LLT<Matrix> x_factor_, y_factor_;
};

//! Iterate of the proximal ADMM together with the last step differences;
//! the differences are zero at k = 0.
struct PadmmState {
  Index k = 0;
  Vector x, y, lam;
  Vector dx, dy, dlam;

  static PadmmState initial(Vector x0, Vector y0, Vector lam0);
  static PadmmState zero(const SeparableProblem& p);
};

//! A KKT triple used as reference point in inequality checks.
struct KktPoint {
  Vector x, y, lam;
};

//! The canonical element of the KKT multifunction at the current iterate,
//! available after every step:
//!   ( rho A^T B dy - P dx, -Q dy, A x + B y - c ) in F(u).
//! Its squared norm obeys norm_sq <= gamma * ||du||_G^2.
struct KktResidualCertificate {
  Vector rx, ry, rfeas;
  double norm_sq = 0.0;
};

}  // namespace padmm

#endif  // PADMM_PROBLEM_HPP_
