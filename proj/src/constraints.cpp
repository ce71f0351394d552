#include "rbhmc/constraints.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rbhmc {

double sigmoid(double t, double mu) {
  if (!std::isfinite(t)) throw std::invalid_argument("sigmoid: argument must be finite");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("sigmoid: mu must be positive");
  return logistic(mu * t);
}

double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double logistic(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

void check_dim(const Constraint& c, const Vector& x) {
  if (c.dim && *c.dim != x.size()) {
    throw std::invalid_argument("constraint '" + c.label + "' expects dimension " +
                                std::to_string(*c.dim) + ", got " + std::to_string(x.size()));
  }
}

}  // namespace

double boundary_energy(const Constraint& c, const Vector& x) {
  check_dim(c, x);
  return softplus(-c.mu * c.g(x));
}

Vector boundary_gradient(const Constraint& c, const Vector& x) {
  check_dim(c, x);
  return (-c.mu * logistic(-c.mu * c.g(x))) * c.grad_g(x);
}

ConstraintSet::ConstraintSet(std::vector<Constraint> constraints) {
  for (auto& c : constraints) add(std::move(c));
}

void ConstraintSet::add(Constraint c) {
  if (!(c.mu > 0.0)) throw std::invalid_argument("constraint '" + c.label + "': mu must be positive");
  if (c.dim) {
    if (dim_ && *dim_ != *c.dim) {
      throw std::invalid_argument("constraint '" + c.label + "' has dimension " +
                                  std::to_string(*c.dim) + " but the set has dimension " +
                                  std::to_string(*dim_));
    }
    dim_ = c.dim;
  }
  constraints_.push_back(std::move(c));
}

void ConstraintSet::check_dim(const Vector& x) const {
  if (dim_ && *dim_ != x.size()) {
    throw std::invalid_argument("constraint set expects dimension " + std::to_string(*dim_) +
                                ", got " + std::to_string(x.size()));
  }
}

double ConstraintSet::energy(const Vector& x) const {
  check_dim(x);
  double total = 0.0;
  for (const auto& c : constraints_) total += boundary_energy(c, x);
  return total;
}

Vector ConstraintSet::gradient(const Vector& x) const {
  check_dim(x);
  Vector total = Vector::Zero(x.size());
  for (const auto& c : constraints_) total += boundary_gradient(c, x);
  return total;
}

double set_energy(const ConstraintSet& s, const Vector& x) { return s.energy(x); }
Vector set_gradient(const ConstraintSet& s, const Vector& x) { return s.gradient(x); }

BoundaryKind parse_boundary_kind(std::string_view name) {
  if (name == "halfplane_y") return BoundaryKind::halfplane_y;
  if (name == "halfplane_diag") return BoundaryKind::halfplane_diag;
  if (name == "disk2") return BoundaryKind::disk2;
  if (name == "parabola") return BoundaryKind::parabola;
  if (name == "ball") return BoundaryKind::ball;
  if (name == "hyperplane") return BoundaryKind::hyperplane;
  throw std::invalid_argument("unknown boundary kind '" + std::string(name) + "'");
}

std::string_view boundary_kind_name(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::halfplane_y: return "halfplane_y";
    case BoundaryKind::halfplane_diag: return "halfplane_diag";
    case BoundaryKind::disk2: return "disk2";
    case BoundaryKind::parabola: return "parabola";
    case BoundaryKind::ball: return "ball";
    case BoundaryKind::hyperplane: return "hyperplane";
  }
  throw std::invalid_argument("unknown boundary kind");
}

Constraint builtin_constraint(BoundaryKind kind, double mu, const BoundaryParams& params) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("builtin_constraint: mu must be positive");
  Constraint c;
  c.mu = mu;
  c.label = std::string(boundary_kind_name(kind));
  switch (kind) {
    case BoundaryKind::halfplane_y:
      c.dim = 2;
      c.g = [](const Vector& x) { return x[1]; };
      c.grad_g = [](const Vector&) { return Vector{{0.0, 1.0}}; };
      break;
    case BoundaryKind::halfplane_diag:
      c.dim = 2;
      c.g = [](const Vector& x) { return x[0] - x[1]; };
      c.grad_g = [](const Vector&) { return Vector{{1.0, -1.0}}; };
      break;
    case BoundaryKind::disk2:
      c.dim = 2;
      c.g = [](const Vector& x) { return 2.0 - x.squaredNorm(); };
      c.grad_g = [](const Vector& x) -> Vector { return -2.0 * x; };
      break;
    case BoundaryKind::parabola:
      c.dim = 2;
      c.g = [](const Vector& x) { return x[0] - x[1] * x[1]; };
      c.grad_g = [](const Vector& x) { return Vector{{1.0, -2.0 * x[1]}}; };
      break;
    case BoundaryKind::ball: {
      if (!(params.radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
      if (!(params.scale > 0.0)) throw std::invalid_argument("ball: scale must be positive");
      const double r2 = params.radius * params.radius;
      const double s = params.scale;
      c.g = [r2, s](const Vector& x) { return s * (r2 - x.squaredNorm()); };
      c.grad_g = [s](const Vector& x) -> Vector { return (-2.0 * s) * x; };
      break;
    }
    case BoundaryKind::hyperplane: {
      if (params.normal.size() == 0 || params.normal.norm() == 0.0) {
        throw std::invalid_argument("hyperplane: normal must be non-zero");
      }
      c.dim = params.normal.size();
      c.g = [n = params.normal, b = params.offset](const Vector& x) { return n.dot(x) - b; };
      c.grad_g = [n = params.normal](const Vector&) { return n; };
      break;
    }
  }
  return c;
}

double boundary_gradient_norm(BoundaryKind kind, const BoundaryParams& params) {
  switch (kind) {
    case BoundaryKind::halfplane_y: return 1.0;
    case BoundaryKind::halfplane_diag: return std::sqrt(2.0);
    case BoundaryKind::disk2: return 2.0 * std::sqrt(2.0);
    case BoundaryKind::parabola: return 1.0;
    case BoundaryKind::ball: return 2.0 * params.radius * params.scale;
    case BoundaryKind::hyperplane: return params.normal.norm();
  }
  throw std::invalid_argument("unknown boundary kind");
}

ConstraintSet table_boundaries(char row, double mu) {
  ConstraintSet s;
  switch (row) {
    case 'a': break;
    case 'b': s.add(builtin_constraint(BoundaryKind::halfplane_y, mu)); break;
    case 'c':
      s.add(builtin_constraint(BoundaryKind::halfplane_y, mu));
      s.add(builtin_constraint(BoundaryKind::halfplane_diag, mu));
      break;
    case 'd': s.add(builtin_constraint(BoundaryKind::disk2, mu)); break;
    case 'e':
      s.add(builtin_constraint(BoundaryKind::disk2, mu));
      s.add(builtin_constraint(BoundaryKind::halfplane_y, mu));
      break;
    case 'f': s.add(builtin_constraint(BoundaryKind::parabola, mu)); break;
    default: throw std::invalid_argument(std::string("unknown boundary row '") + row + "'");
  }
  return s;
}

bool table_roi_contains(char row, double x, double y) {
  switch (row) {
    case 'a': return true;
    case 'b': return y > 0.0;
    case 'c': return y > 0.0 && x - y > 0.0;
    case 'd': return 2.0 - x * x - y * y > 0.0;
    case 'e': return y > 0.0 && 2.0 - x * x - y * y > 0.0;
    case 'f': return x - y * y > 0.0;
    default: throw std::invalid_argument(std::string("unknown boundary row '") + row + "'");
  }
}

}  // namespace rbhmc
