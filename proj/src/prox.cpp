#include "padmm/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace padmm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

ProxFunction ProxFunction::quadratic(Vector center) {
  ProxFunction f;
  f.kind_ = Kind::kQuadratic;
  f.dim_ = center.size();
  f.center_ = std::move(center);
  return f;
}

ProxFunction ProxFunction::l1(Index dim, double weight) {
  require(dim >= 0, "l1: negative dimension");
  require(weight >= 0.0, "l1: negative weight");
  ProxFunction f;
  f.kind_ = Kind::kL1;
  f.dim_ = dim;
  f.weight_ = weight;
  return f;
}

ProxFunction ProxFunction::box(Vector lower, Vector upper) {
  require(lower.size() == upper.size(), "box: bound dimension mismatch");
  require((lower.array() <= upper.array()).all(), "box: lower > upper");
  ProxFunction f;
  f.kind_ = Kind::kBox;
  f.dim_ = lower.size();
  f.lower_ = std::move(lower);
  f.upper_ = std::move(upper);
  return f;
}

ProxFunction ProxFunction::nonneg(Index dim) {
  require(dim >= 0, "nonneg: negative dimension");
  ProxFunction f;
  f.kind_ = Kind::kNonneg;
  f.dim_ = dim;
  return f;
}

ProxFunction ProxFunction::free(Index dim) {
  require(dim >= 0, "free: negative dimension");
  return box(Vector::Constant(dim, -kInf), Vector::Constant(dim, kInf));
}

ProxFunction ProxFunction::zero(Index dim) {
  require(dim >= 0, "zero: negative dimension");
  ProxFunction f;
  f.kind_ = Kind::kZero;
  f.dim_ = dim;
  return f;
}

ProxFunction ProxFunction::sum_separable(std::vector<ProxFunction> parts) {
  require(!parts.empty(), "sum_separable: no parts");
  ProxFunction f;
  f.kind_ = Kind::kSumSeparable;
  f.dim_ = 0;
  for (const auto& p : parts) f.dim_ += p.dim();
  f.parts_ = std::move(parts);
  return f;
}

Index ProxFunction::dim() const { return dim_; }
ProxFunction::Kind ProxFunction::kind() const { return kind_; }

bool ProxFunction::is_indicator() const {
  switch (kind_) {
    case Kind::kBox:
    case Kind::kNonneg:
      return true;
    case Kind::kSumSeparable:
      return std::all_of(parts_.begin(), parts_.end(),
                         [](const ProxFunction& p) { return p.is_indicator(); });
    default:
      return false;
  }
}

double ProxFunction::convexity_modulus() const {
  switch (kind_) {
    case Kind::kQuadratic:
      return 1.0;
    case Kind::kSumSeparable: {
      double m = kInf;
      for (const auto& p : parts_) m = std::min(m, p.convexity_modulus());
      return m;
    }
    default:
      return 0.0;
  }
}

double ProxFunction::value(const Vector& v) const {
  require(v.size() == dim_, "value: dimension mismatch");
  switch (kind_) {
    case Kind::kQuadratic:
      return 0.5 * (v - center_).squaredNorm();
    case Kind::kL1:
      return weight_ * v.lpNorm<1>();
    case Kind::kBox:
      return ((v.array() >= lower_.array()).all() &&
              (v.array() <= upper_.array()).all())
                 ? 0.0
                 : kInf;
    case Kind::kNonneg:
      return (v.array() >= 0.0).all() ? 0.0 : kInf;
    case Kind::kZero:
      return 0.0;
    case Kind::kSumSeparable: {
      double total = 0.0;
      Index off = 0;
      for (const auto& p : parts_) {
        total += p.value(v.segment(off, p.dim()));
        off += p.dim();
      }
      return total;
    }
  }
  throw std::logic_error("unreachable");
}

Vector ProxFunction::prox(double t, const Vector& v) const {
  require(t > 0.0, "prox: step must be positive");
  require(v.size() == dim_, "prox: dimension mismatch");
  switch (kind_) {
    case Kind::kQuadratic:
      return (v + t * center_) / (1.0 + t);
    case Kind::kL1: {
      const double thr = t * weight_;
      return v.unaryExpr([thr](double a) {
        return a > thr ? a - thr : (a < -thr ? a + thr : 0.0);
      });
    }
    case Kind::kBox:
      return v.cwiseMax(lower_).cwiseMin(upper_);
    case Kind::kNonneg:
      return v.cwiseMax(0.0);
    case Kind::kZero:
      return v;
    case Kind::kSumSeparable: {
      Vector out(dim_);
      Index off = 0;
      for (const auto& p : parts_) {
        out.segment(off, p.dim()) = p.prox(t, v.segment(off, p.dim()));
        off += p.dim();
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

Vector ProxFunction::project(const Vector& v) const {
  if (!is_indicator())
    throw std::invalid_argument("project: function is not an indicator");
  return prox(1.0, v);
}

double ProxFunction::subgradient_distance(const Vector& point, const Vector& xi) const {
  require(point.size() == dim_ && xi.size() == dim_,
          "subgradient_distance: dimension mismatch");
  switch (kind_) {
    case Kind::kQuadratic:
      return (xi - (point - center_)).norm();
    case Kind::kL1: {
      double sq = 0.0;
      for (Index i = 0; i < dim_; ++i) {
        double r;
        if (point[i] > 0.0)
          r = xi[i] - weight_;
        else if (point[i] < 0.0)
          r = xi[i] + weight_;
        else
          r = std::max(0.0, std::abs(xi[i]) - weight_);
        sq += r * r;
      }
      return std::sqrt(sq);
    }
    case Kind::kBox: {
      double sq = 0.0;
      for (Index i = 0; i < dim_; ++i) {
        if (point[i] < lower_[i] || point[i] > upper_[i]) return kInf;
        double r = 0.0;
        const bool at_lower = point[i] <= lower_[i];
        const bool at_upper = point[i] >= upper_[i];
        if (at_lower && at_upper) {
          r = 0.0;  // degenerate interval, any xi is normal
        } else if (at_lower) {
          r = std::max(0.0, xi[i]);
        } else if (at_upper) {
          r = std::max(0.0, -xi[i]);
        } else {
          r = std::abs(xi[i]);
        }
        sq += r * r;
      }
      return std::sqrt(sq);
    }
    case Kind::kNonneg: {
      double sq = 0.0;
      for (Index i = 0; i < dim_; ++i) {
        if (point[i] < 0.0) return kInf;
        const double r = point[i] > 0.0 ? std::abs(xi[i]) : std::max(0.0, xi[i]);
        sq += r * r;
      }
      return std::sqrt(sq);
    }
    case Kind::kZero:
      return xi.norm();
    case Kind::kSumSeparable: {
      double sq = 0.0;
      Index off = 0;
      for (const auto& p : parts_) {
        const double r =
            p.subgradient_distance(point.segment(off, p.dim()), xi.segment(off, p.dim()));
        if (r == kInf) return kInf;
        sq += r * r;
        off += p.dim();
      }
      return std::sqrt(sq);
    }
  }
  throw std::logic_error("unreachable");
}

const Vector& ProxFunction::quadratic_center() const {
  require(kind_ == Kind::kQuadratic, "quadratic_center: not a quadratic");
  return center_;
}

double ProxFunction::l1_weight() const {
  require(kind_ == Kind::kL1, "l1_weight: not an l1 function");
  return weight_;
}

const Vector& ProxFunction::box_lower() const {
  require(kind_ == Kind::kBox, "box_lower: not a box indicator");
  return lower_;
}

const Vector& ProxFunction::box_upper() const {
  require(kind_ == Kind::kBox, "box_upper: not a box indicator");
  return upper_;
}

const std::vector<ProxFunction>& ProxFunction::parts() const {
  require(kind_ == Kind::kSumSeparable, "parts: not a separable sum");
  return parts_;
}

}  // namespace padmm
