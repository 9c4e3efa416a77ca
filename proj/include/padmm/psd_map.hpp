#ifndef PADMM_PSD_MAP_HPP_
#define PADMM_PSD_MAP_HPP_

#include <memory>
#include <utility>

#include "padmm/linear_map.hpp"

namespace padmm {

//! Positive semi-definite self-adjoint operator with a construction
//! certificate: every way of building one is PSD by construction, so no
//! runtime eigen-check is needed.
class PsdMap {
 public:
  enum class Kind { kZero, kDiagonal, kScaledIdentity, kGram, kShiftedGram, kSum };

  static PsdMap zero(Index n);
  //! diag(d) with d >= 0 entrywise (validated).
  static PsdMap diagonal(Vector d);
  //! s * I with s >= 0 (validated).
  static PsdMap scaled_identity(Index n, double scale);
  //! weight * M^T M with weight >= 0 (validated).
  static PsdMap gram(LinearMap m, double weight);
  //! tau * I - weight * M^T M; requires tau >= weight * ||M||^2, checked at
  //! build time against the power-iteration norm with a 1e-9 margin.
  static PsdMap shifted_gram(double tau, double weight, LinearMap m);
  static PsdMap sum(const PsdMap& a, const PsdMap& b);

  Index dim() const { return node_->dim; }
  Kind kind() const { return node_->kind; }
  bool is_zero() const { return node_->kind == Kind::kZero; }

  Vector apply(const Vector& v) const;
  //! Quadratic form <v, Pv>, evaluated kind-wise so it stays >= -eps even
  //! in floating point.
  double quad(const Vector& v) const;
  Matrix to_dense() const;
  //! Largest eigenvalue via power iteration (self-adjoint, PSD).
  double operator_norm() const;

  //! Accessors for the shifted-gram pattern tau*I - weight*M^T M.
  double shift() const;
  double weight() const;
  const LinearMap& base() const;
  const Vector& diagonal_values() const;
  double scale() const;
  //! Children of a sum map.
  std::pair<PsdMap, PsdMap> summands() const;

 private:
  struct Node {
    Kind kind;
    Index dim = 0;
    Vector d;
    double scale = 0.0;   // scaled identity
    double tau = 0.0;     // shifted gram
    double weight = 0.0;  // gram / shifted gram
    std::unique_ptr<LinearMap> base;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };

  explicit PsdMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Vector apply_node(const Node& n, const Vector& v);
  static double quad_node(const Node& n, const Vector& v);
  static Matrix dense_node(const Node& n);

  std::shared_ptr<const Node> node_;
};

//! The Lyapunov seminorm of the proximal ADMM iteration:
//! ||u||_G^2 = ||x||_P^2 + ||y||_Qhat^2 + ||lambda||^2 / rho
//! with Qhat = rho * B^T B + Q.
struct GMetric {
  PsdMap P;
  PsdMap Qhat;
  double rho;

  static GMetric from_parts(PsdMap P, const PsdMap& Q, const LinearMap& B, double rho);

  double seminorm_sq(const Vector& x, const Vector& y, const Vector& lam) const;
};

}  // namespace padmm

#endif  // PADMM_PSD_MAP_HPP_
