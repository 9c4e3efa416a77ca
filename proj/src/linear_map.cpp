#include "padmm/linear_map.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace padmm {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

LinearMap LinearMap::dense(Matrix m) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kDense;
  node->rows = m.rows();
  node->cols = m.cols();
  node->m = std::move(m);
  return LinearMap(std::move(node));
}

LinearMap LinearMap::dense_row_major(Index rows, Index cols,
                                     const std::vector<double>& entries) {
  require(rows >= 0 && cols >= 0, "dense map: negative dimension");
  require(static_cast<Index>(entries.size()) == rows * cols,
          "dense map: entry count does not match rows*cols");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = entries[static_cast<size_t>(i * cols + j)];
  return dense(std::move(m));
}

LinearMap LinearMap::diagonal(Vector d) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kDiagonal;
  node->rows = d.size();
  node->cols = d.size();
  node->d = std::move(d);
  return LinearMap(std::move(node));
}

LinearMap LinearMap::scaled_identity(Index n, double scale) {
  require(n >= 0, "scaled identity: negative dimension");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kScaledIdentity;
  node->rows = n;
  node->cols = n;
  node->scale = scale;
  return LinearMap(std::move(node));
}

LinearMap LinearMap::zero(Index rows, Index cols) {
  require(rows >= 0 && cols >= 0, "zero map: negative dimension");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kZero;
  node->rows = rows;
  node->cols = cols;
  return LinearMap(std::move(node));
}

LinearMap LinearMap::sum(const LinearMap& a, const LinearMap& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "map sum: dimension mismatch");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kSum;
  node->rows = a.rows();
  node->cols = a.cols();
  node->a = a.node_;
  node->b = b.node_;
  return LinearMap(std::move(node));
}

LinearMap LinearMap::compose(const LinearMap& outer, const LinearMap& inner) {
  require(outer.cols() == inner.rows(), "map composition: dimension mismatch");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kCompose;
  node->rows = outer.rows();
  node->cols = inner.cols();
  node->a = outer.node_;
  node->b = inner.node_;
  return LinearMap(std::move(node));
}

bool LinearMap::is_identity() const {
  return node_->kind == Kind::kScaledIdentity && node_->scale == 1.0;
}

Vector LinearMap::apply_node(const Node& n, const Vector& v) {
  switch (n.kind) {
    case Kind::kDense:
      return n.m * v;
    case Kind::kDiagonal:
      return n.d.cwiseProduct(v);
    case Kind::kScaledIdentity:
      return n.scale * v;
    case Kind::kZero:
      return Vector::Zero(n.rows);
    case Kind::kSum:
      return apply_node(*n.a, v) + apply_node(*n.b, v);
    case Kind::kCompose:
      return apply_node(*n.a, apply_node(*n.b, v));
  }
  throw std::logic_error("unreachable");
}

Vector LinearMap::adjoint_apply_node(const Node& n, const Vector& w) {
  switch (n.kind) {
    case Kind::kDense:
      return n.m.transpose() * w;
    case Kind::kDiagonal:
      return n.d.cwiseProduct(w);
    case Kind::kScaledIdentity:
      return n.scale * w;
    case Kind::kZero:
      return Vector::Zero(n.cols);
    case Kind::kSum:
      return adjoint_apply_node(*n.a, w) + adjoint_apply_node(*n.b, w);
    case Kind::kCompose:
      // (outer ∘ inner)* = inner* ∘ outer*
      return adjoint_apply_node(*n.b, adjoint_apply_node(*n.a, w));
  }
  throw std::logic_error("unreachable");
}

Vector LinearMap::apply(const Vector& v) const {
  require(v.size() == cols(), "apply: dimension mismatch");
  return apply_node(*node_, v);
}

Vector LinearMap::adjoint_apply(const Vector& w) const {
  require(w.size() == rows(), "adjoint_apply: dimension mismatch");
  return adjoint_apply_node(*node_, w);
}

Matrix LinearMap::to_dense() const {
  switch (node_->kind) {
    case Kind::kDense:
      return node_->m;
    case Kind::kDiagonal:
      return Matrix(node_->d.asDiagonal());
    case Kind::kScaledIdentity:
      return node_->scale * Matrix::Identity(rows(), rows());
    case Kind::kZero:
      return Matrix::Zero(rows(), cols());
    case Kind::kSum:
      return LinearMap(node_->a).to_dense() + LinearMap(node_->b).to_dense();
    case Kind::kCompose:
      return LinearMap(node_->a).to_dense() * LinearMap(node_->b).to_dense();
  }
  throw std::logic_error("unreachable");
}

double power_iteration_norm(Index dim,
                            const std::function<Vector(const Vector&)>& sym_apply,
                            int iterations, double tol) {
  if (dim == 0) return 0.0;
  // Deterministic start so repeated estimates agree bit-for-bit.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ static_cast<uint64_t>(dim));
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = gauss(rng);
  double nv = v.norm();
  if (nv == 0.0) v[0] = 1.0; else v /= nv;

  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector w = sym_apply(v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double estimate = v.dot(w);
    v = w / nw;
    if (it > 0 && std::abs(estimate - lambda) <= tol * std::max(1.0, std::abs(estimate))) {
      lambda = estimate;
      break;
    }
    lambda = estimate;
  }
  return std::max(lambda, 0.0);
}

const Matrix& LinearMap::dense_matrix() const {
  require(node_->kind == Kind::kDense, "dense_matrix: not a dense map");
  return node_->m;
}

const Vector& LinearMap::diagonal_values() const {
  require(node_->kind == Kind::kDiagonal, "diagonal_values: not a diagonal map");
  return node_->d;
}

double LinearMap::scale() const {
  require(node_->kind == Kind::kScaledIdentity, "scale: not a scaled identity");
  return node_->scale;
}

double LinearMap::operator_norm() const {
  const LinearMap& self = *this;
  const double lam = power_iteration_norm(
      cols(), [&self](const Vector& v) { return self.adjoint_apply(self.apply(v)); });
  return std::sqrt(lam);
}

}  // namespace padmm
