#include "padmm/psd_map.hpp"

#include <cmath>
#include <stdexcept>

namespace padmm {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

PsdMap PsdMap::zero(Index n) {
  require(n >= 0, "psd zero: negative dimension");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kZero;
  node->dim = n;
  return PsdMap(std::move(node));
}

PsdMap PsdMap::diagonal(Vector d) {
  require((d.array() >= 0.0).all(), "psd diagonal: negative entry");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kDiagonal;
  node->dim = d.size();
  node->d = std::move(d);
  return PsdMap(std::move(node));
}

PsdMap PsdMap::scaled_identity(Index n, double scale) {
  require(n >= 0, "psd identity: negative dimension");
  require(scale >= 0.0, "psd identity: negative scale");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kScaledIdentity;
  node->dim = n;
  node->scale = scale;
  return PsdMap(std::move(node));
}

PsdMap PsdMap::gram(LinearMap m, double weight) {
  require(weight >= 0.0, "psd gram: negative weight");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kGram;
  node->dim = m.cols();
  node->weight = weight;
  node->base = std::make_unique<LinearMap>(std::move(m));
  return PsdMap(std::move(node));
}

PsdMap PsdMap::shifted_gram(double tau, double weight, LinearMap m) {
  require(weight >= 0.0, "psd shifted gram: negative weight");
  const double nrm = m.operator_norm();
  if (tau < weight * nrm * nrm - 1e-9 * std::max(1.0, tau)) {
    throw std::invalid_argument(
        "psd shifted gram: tau below weight*||M||^2, map would be indefinite");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::kShiftedGram;
  node->dim = m.cols();
  node->tau = tau;
  node->weight = weight;
  node->base = std::make_unique<LinearMap>(std::move(m));
  return PsdMap(std::move(node));
}

PsdMap PsdMap::sum(const PsdMap& a, const PsdMap& b) {
  require(a.dim() == b.dim(), "psd sum: dimension mismatch");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kSum;
  node->dim = a.dim();
  node->a = a.node_;
  node->b = b.node_;
  return PsdMap(std::move(node));
}

Vector PsdMap::apply_node(const Node& n, const Vector& v) {
  switch (n.kind) {
    case Kind::kZero:
      return Vector::Zero(n.dim);
    case Kind::kDiagonal:
      return n.d.cwiseProduct(v);
    case Kind::kScaledIdentity:
      return n.scale * v;
    case Kind::kGram:
      return n.weight * n.base->adjoint_apply(n.base->apply(v));
    case Kind::kShiftedGram:
      return n.tau * v - n.weight * n.base->adjoint_apply(n.base->apply(v));
    case Kind::kSum:
      return apply_node(*n.a, v) + apply_node(*n.b, v);
  }
  throw std::logic_error("unreachable");
}

double PsdMap::quad_node(const Node& n, const Vector& v) {
  switch (n.kind) {
    case Kind::kZero:
      return 0.0;
    case Kind::kDiagonal:
      return n.d.cwiseProduct(v).dot(v);
    case Kind::kScaledIdentity:
      return n.scale * v.squaredNorm();
    case Kind::kGram:
      return n.weight * n.base->apply(v).squaredNorm();
    case Kind::kShiftedGram:
      return n.tau * v.squaredNorm() - n.weight * n.base->apply(v).squaredNorm();
    case Kind::kSum:
      return quad_node(*n.a, v) + quad_node(*n.b, v);
  }
  throw std::logic_error("unreachable");
}

Matrix PsdMap::dense_node(const Node& n) {
  switch (n.kind) {
    case Kind::kZero:
      return Matrix::Zero(n.dim, n.dim);
    case Kind::kDiagonal:
      return Matrix(n.d.asDiagonal());
    case Kind::kScaledIdentity:
      return n.scale * Matrix::Identity(n.dim, n.dim);
    case Kind::kGram: {
      const Matrix b = n.base->to_dense();
      return n.weight * b.transpose() * b;
    }
    case Kind::kShiftedGram: {
      const Matrix b = n.base->to_dense();
      return n.tau * Matrix::Identity(n.dim, n.dim) - n.weight * b.transpose() * b;
    }
    case Kind::kSum:
      return dense_node(*n.a) + dense_node(*n.b);
  }
  throw std::logic_error("unreachable");
}

Vector PsdMap::apply(const Vector& v) const {
  require(v.size() == dim(), "psd apply: dimension mismatch");
  return apply_node(*node_, v);
}

double PsdMap::quad(const Vector& v) const {
  require(v.size() == dim(), "psd quad: dimension mismatch");
  return quad_node(*node_, v);
}

Matrix PsdMap::to_dense() const { return dense_node(*node_); }

double PsdMap::operator_norm() const {
  const PsdMap& self = *this;
  return power_iteration_norm(dim(),
                              [&self](const Vector& v) { return self.apply(v); });
}

double PsdMap::shift() const {
  require(node_->kind == Kind::kShiftedGram, "shift: not a shifted gram map");
  return node_->tau;
}

double PsdMap::weight() const {
  require(node_->kind == Kind::kGram || node_->kind == Kind::kShiftedGram,
          "weight: not a gram-backed map");
  return node_->weight;
}

const LinearMap& PsdMap::base() const {
  require(node_->kind == Kind::kGram || node_->kind == Kind::kShiftedGram,
          "base: not a gram-backed map");
  return *node_->base;
}

const Vector& PsdMap::diagonal_values() const {
  require(node_->kind == Kind::kDiagonal, "diagonal_values: not a diagonal map");
  return node_->d;
}

double PsdMap::scale() const {
  require(node_->kind == Kind::kScaledIdentity, "scale: not a scaled identity");
  return node_->scale;
}

std::pair<PsdMap, PsdMap> PsdMap::summands() const {
  require(node_->kind == Kind::kSum, "summands: not a sum");
  return {PsdMap(node_->a), PsdMap(node_->b)};
}

GMetric GMetric::from_parts(PsdMap P, const PsdMap& Q, const LinearMap& B, double rho) {
  if (rho <= 0.0) throw std::invalid_argument("GMetric: rho must be positive");
  return GMetric{std::move(P), PsdMap::sum(PsdMap::gram(B, rho), Q), rho};
}

double GMetric::seminorm_sq(const Vector& x, const Vector& y, const Vector& lam) const {
  if (x.size() != P.dim() || y.size() != Qhat.dim())
    throw std::invalid_argument("GMetric: dimension mismatch");
  return P.quad(x) + Qhat.quad(y) + lam.squaredNorm() / rho;
}

}  // namespace padmm
