#ifndef PADMM_PROX_HPP_
#define PADMM_PROX_HPP_

#include <vector>

#include "padmm/linear_map.hpp"

namespace padmm {

//! Closed catalog of proper lower semi-continuous convex functions with
//! analytic proximal maps. Keeping the catalog enumerated (instead of
//! accepting arbitrary callables) means every prox output can be certified
//! through its subgradient inclusion.
class ProxFunction {
 public:
  enum class Kind { kQuadratic, kL1, kBox, kNonneg, kZero, kSumSeparable };

  //! (1/2)||w - center||^2.
  static ProxFunction quadratic(Vector center);
  //! weight * ||w||_1, weight >= 0.
  static ProxFunction l1(Index dim, double weight);
  //! Indicator of the box [lower, upper] (entrywise, lower <= upper).
  static ProxFunction box(Vector lower, Vector upper);
  //! Indicator of the nonnegative cone.
  static ProxFunction nonneg(Index dim);
  //! Indicator of the whole space (a box with infinite bounds); projection
  //! is the identity.
  static ProxFunction free(Index dim);
  //! Identically zero.
  static ProxFunction zero(Index dim);
  //! Block-separable sum: the argument splits into consecutive blocks, one
  //! part applies to each.
  static ProxFunction sum_separable(std::vector<ProxFunction> parts);

  Index dim() const;
  Kind kind() const;
  bool is_indicator() const;
  bool is_quadratic() const { return kind() == Kind::kQuadratic; }
  //! Modulus of convexity: 1 for the unit quadratic, 0 for the others;
  //! the minimum over blocks for a separable sum.
  double convexity_modulus() const;

  //! Function value; +inf outside an indicator's set.
  double value(const Vector& v) const;

  //! argmin_w { f(w) + (1/(2t)) ||w - v||^2 }, t > 0.
  Vector prox(double t, const Vector& v) const;

  //! Orthogonal projection; defined for indicator kinds only.
  Vector project(const Vector& v) const;

  //! Distance from xi to the subdifferential at `point`; +inf if `point`
  //! lies outside the domain. This is the certificate for prox optimality:
  //! (v - prox(t,v))/t must belong to the subdifferential at the output.
  double subgradient_distance(const Vector& point, const Vector& xi) const;

  //! Center of a quadratic part (throws for other kinds).
  const Vector& quadratic_center() const;
  double l1_weight() const;
  const Vector& box_lower() const;
  const Vector& box_upper() const;
  const std::vector<ProxFunction>& parts() const;

 private:
  ProxFunction() = default;

  Kind kind_ = Kind::kZero;
  Index dim_ = 0;
  Vector center_;      // quadratic
  Vector lower_, upper_;  // box
  double weight_ = 0.0;   // l1
  std::vector<ProxFunction> parts_;  // sum-separable
};

}  // namespace padmm

#endif  // PADMM_PROX_HPP_
