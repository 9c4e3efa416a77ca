#ifndef PADMM_LINEAR_MAP_HPP_
#define PADMM_LINEAR_MAP_HPP_

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

namespace padmm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

//! Immutable linear operator between real coordinate spaces.
//!
//! A map is backed by a dense matrix, a diagonal, a scaled identity, or is
//! built structurally as a sum or composition of other maps. Values are
//! cheap to copy (shared immutable representation) and safe to share across
//! threads.
class LinearMap {
 public:
  enum class Kind { kDense, kDiagonal, kScaledIdentity, kZero, kSum, kCompose };

  static LinearMap dense(Matrix m);
  //! Dense map from row-major entries, the layout used by config files.
  static LinearMap dense_row_major(Index rows, Index cols,
                                   const std::vector<double>& entries);
  static LinearMap diagonal(Vector d);
  static LinearMap scaled_identity(Index n, double scale);
  static LinearMap identity(Index n) { return scaled_identity(n, 1.0); }
  static LinearMap zero(Index rows, Index cols);
  //! a + b; dimensions must agree.
  static LinearMap sum(const LinearMap& a, const LinearMap& b);
  //! outer ∘ inner, i.e. v ↦ outer(inner(v)).
  static LinearMap compose(const LinearMap& outer, const LinearMap& inner);

  Index rows() const { return node_->rows; }
  Index cols() const { return node_->cols; }
  Kind kind() const { return node_->kind; }
  bool is_identity() const;

  Vector apply(const Vector& v) const;
  Vector adjoint_apply(const Vector& w) const;
  Matrix to_dense() const;

  //! Backing data accessors for serialization; each requires the matching kind.
  const Matrix& dense_matrix() const;
  const Vector& diagonal_values() const;
  double scale() const;

  //! Largest singular value, estimated by power iteration on A*A
  //! (50 iterations, relative tolerance 1e-8, deterministic start).
  double operator_norm() const;

 private:
  struct Node {
    Kind kind;
    Index rows = 0;
    Index cols = 0;
    Matrix m;
    Vector d;
    double scale = 0.0;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };

  explicit LinearMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Vector apply_node(const Node& n, const Vector& v);
  static Vector adjoint_apply_node(const Node& n, const Vector& w);

  std::shared_ptr<const Node> node_;
};

//! Power-iteration estimate of the operator norm, shared with PsdMap.
double power_iteration_norm(Index dim,
                            const std::function<Vector(const Vector&)>& sym_apply,
                            int iterations = 50, double tol = 1e-8);

}  // namespace padmm

#endif  // PADMM_LINEAR_MAP_HPP_
