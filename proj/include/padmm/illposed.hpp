#ifndef PADMM_ILLPOSED_HPP_
#define PADMM_ILLPOSED_HPP_

#include <Eigen/Cholesky>
#include <optional>

#include "padmm/diagnostics.hpp"
#include "padmm/trace.hpp"

namespace padmm {

//! Constrained linear inverse problem  A x = b^delta, x in C, regularized
//! through the penalty f(L x). The stacked operator (A; L) must be jointly
//! coercive and f strongly convex; both are validated at construction and
//! the joint-coercivity constant c0 is reported.
class InverseProblemSpec {
 public:
  InverseProblemSpec(LinearMap A, LinearMap L, ProxFunction constraint, ProxFunction f,
                     double rho1, double rho2, double rho3, PsdMap Q, Vector b_delta,
                     double delta);

  const LinearMap& A() const { return A_; }
  const LinearMap& L() const { return L_; }
  const ProxFunction& constraint() const { return constraint_; }
  const ProxFunction& f() const { return f_; }
  double rho1() const { return rho1_; }
  double rho2() const { return rho2_; }
  double rho3() const { return rho3_; }
  const PsdMap& Q() const { return Q_; }
  const Vector& b_delta() const { return b_delta_; }
  double delta() const { return delta_; }
  double c0() const { return c0_; }

  Index x_dim() const { return A_.cols(); }
  Index y_dim() const { return L_.rows(); }
  Index data_dim() const { return A_.rows(); }

  //! True when the simplified scheme applies: L = I, f = (1/2)||.||^2, and
  //! the constraint is an indicator.
  bool simplified_compatible() const { return simplified_ok_; }

  const Eigen::LLT<Matrix>& general_factor() const { return general_factor_; }
  const Eigen::LLT<Matrix>& simplified_factor() const;
  //! rho1 * A^T b_delta, the constant part of the z-update right-hand side.
  const Vector& rho1_At_b() const { return rho1_At_b_; }

 private:
  LinearMap A_, L_;
  ProxFunction constraint_, f_;
  double rho1_, rho2_, rho3_;
  PsdMap Q_;
  Vector b_delta_;
  double delta_;

  double c0_ = 0.0;
  bool simplified_ok_ = false;
  Eigen::LLT<Matrix> general_factor_;
  Eigen::LLT<Matrix> simplified_factor_;
  Vector rho1_At_b_;
};

//! Iterate of the regularizing splitting method with cached step
//! differences (zero at k = 0). The simplified scheme does not use the
//! (y, mu) pair; it keeps y mirroring z and mu at zero.
struct RegState {
  Index k = 0;
  Vector z, y, x, lam, mu, nu;
  Vector dz, dy, dx, dlam, dmu, dnu;

  static RegState zero(const InverseProblemSpec& spec);
};

//! Witness of the source condition: mu_dag in df(L x_dag), nu_dag in the
//! normal cone of C at x_dag, and L* mu_dag + nu_dag + A* lam_dag = 0.
struct SourceCertificate {
  Vector lam_dag, mu_dag, nu_dag;
};

//! Validates the certificate inclusions and the stationarity identity to
//! the given tolerance; throws std::invalid_argument on failure.
void validate_certificate(const SourceCertificate& cert, const InverseProblemSpec& spec,
                          const Vector& x_true, double tol = 1e-8);

enum class RegScheme { kGeneral, kSimplified };

//! One iteration of the general three-dual scheme; the z-update solves the
//! factored normal system and its optimality condition is certified to 1e-7.
RegState padmm2_step(const InverseProblemSpec& spec, const RegState& s);

//! One iteration of the simplified minimal-norm scheme (L = I,
//! f = (1/2)||.||^2): z through the factored system, x by projection,
//! then the two dual updates. spec.rho2 couples z and x here.
RegState padmm26_step(const InverseProblemSpec& spec, const RegState& s);

//! The descent energy E_k of a state with k >= 1; monotonically
//! non-increasing along either scheme.
double energy(const RegState& s, const InverseProblemSpec& spec, RegScheme scheme);

//! The certificate-anchored energy Phi_k; finite for every k >= 0.
double phi(const RegState& s, const SourceCertificate& cert, const Vector& x_true,
           const InverseProblemSpec& spec, RegScheme scheme);

//! A-priori stopping index k_delta = ceil(c_stop / delta) >= 1.
size_t a_priori_stop(double delta, double c_stop);

struct RegRun {
  RegTrace trace;
  RegState final_state;
};

RegRun run_regularized(const InverseProblemSpec& spec, RegScheme scheme, size_t iters,
                       const Vector* x_true = nullptr,
                       const SourceCertificate* cert = nullptr);

//! Pointwise verification of the noise-propagation bounds along a run
//! carrying Phi records, each with 1e-8 relative slack:
//!   E_{k+1} <= Phi_k - Phi_{k+1} + sqrt(2 rho1 Phi_{k+1}) delta
//!   Phi_{k+1} <= Phi_0 + delta * sum_{j<=k+1} sqrt(2 rho1 Phi_j)
//!   sqrt(Phi_k) <= sqrt(Phi_0) + sqrt(2 rho1) k delta
//!   E_k <= 2 Phi_0 / k + (5/2) rho1 k delta^2
Report check_ip_bounds(const RegTrace& trace, const InverseProblemSpec& spec,
                       double delta);
Report check_ip_bounds(const RegTrace& trace, double rho1, double delta);

//! Monotone decrease of E_k along a run (additive 1e-9*(1+magnitude) slack).
CheckResult check_energy_monotone(const RegTrace& trace);

}  // namespace padmm

#endif  // PADMM_ILLPOSED_HPP_
