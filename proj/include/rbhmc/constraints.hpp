#ifndef RBHMC_CONSTRAINTS_HPP
#define RBHMC_CONSTRAINTS_HPP

#include "rbhmc/common.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rbhmc {

/// Logistic sigmoid 1/(1+exp(-mu*t)). Throws std::invalid_argument for
/// non-finite t or mu <= 0.
double sigmoid(double t, double mu);

/// log(1 + exp(z)) without overflow for any finite z.
double softplus(double z);

/// 1/(1 + exp(-z)) without overflow for any finite z.
double logistic(double z);

/// A truncation boundary given as the zero level set of a smooth function.
/// The region of interest is { x : g(x) > 0 }.
struct Constraint {
  ScalarField g;
  VectorField grad_g;
  double mu = 1.0;
  std::string label;
  // Fixed input dimension, when the level set only makes sense in one.
  std::optional<Eigen::Index> dim;
};

/// Boundary potential log(1 + exp(-mu g(x))).
double boundary_energy(const Constraint& c, const Vector& x);

/// Gradient of the boundary potential, -mu grad_g(x) / (1 + exp(mu g(x))).
Vector boundary_gradient(const Constraint& c, const Vector& x);

/// Sum of boundary potentials. An empty set contributes nothing.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  explicit ConstraintSet(std::vector<Constraint> constraints);

  void add(Constraint c);

  double energy(const Vector& x) const;
  Vector gradient(const Vector& x) const;

  bool empty() const { return constraints_.empty(); }
  std::size_t size() const { return constraints_.size(); }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::optional<Eigen::Index>& dim() const { return dim_; }

 private:
  void check_dim(const Vector& x) const;

  std::vector<Constraint> constraints_;
  std::optional<Eigen::Index> dim_;
};

double set_energy(const ConstraintSet& s, const Vector& x);
Vector set_gradient(const ConstraintSet& s, const Vector& x);

enum class BoundaryKind { halfplane_y, halfplane_diag, disk2, parabola, ball, hyperplane };

/// Shape parameters for the D-dimensional built-ins. Ignored by the 2D kinds.
struct BoundaryParams {
  double radius = 3.0;  // ball: g = scale * (radius^2 - |x|^2)
  double scale = 1.0;
  Vector normal;        // hyperplane: g = normal . x - offset
  double offset = 0.0;
};

BoundaryKind parse_boundary_kind(std::string_view name);
std::string_view boundary_kind_name(BoundaryKind kind);

Constraint builtin_constraint(BoundaryKind kind, double mu, const BoundaryParams& params = {});

/// |grad g| on the boundary of a built-in (at the vertex for the parabola).
double boundary_gradient_norm(BoundaryKind kind, const BoundaryParams& params = {});

/// The six truncation configurations of the 2D Gaussian study, rows 'a'..'f':
/// none, y > 0, y > 0 and x > y, disk of radius sqrt(2), half-disk, parabola x > y^2.
ConstraintSet table_boundaries(char row, double mu);

/// Exact indicator of the region described by `table_boundaries(row, .)`.
bool table_roi_contains(char row, double x, double y);

}  // namespace rbhmc

#endif
