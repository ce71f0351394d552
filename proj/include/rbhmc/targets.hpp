#ifndef RBHMC_TARGETS_HPP
#define RBHMC_TARGETS_HPP

#include "rbhmc/common.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace rbhmc {

/// Closed ball { |x| <= radius } centred at the origin.
struct BallRoi {
  double radius = 3.0;
};

/// Intersection of half-spaces { x : normals[i] . x >= offsets[i] }.
struct HalfspaceRoi {
  std::vector<Vector> normals;
  std::vector<double> offsets;
};

/// Arbitrary membership test. Not usable by the reflective sampler.
struct CustomRoi {
  std::function<bool(const Vector&)> contains;
};

using HardRoi = std::variant<BallRoi, HalfspaceRoi, CustomRoi>;

bool roi_contains(const HardRoi& roi, const Vector& x);

/// Smooth unnormalized density exp(-U(x)). `potential` and `grad_potential`
/// are the smooth part, defined on the whole space; `hard_roi`, when set, is
/// the exact truncation enforced by the rejecting and reflective samplers.
struct Target {
  Eigen::Index dim = 0;
  ScalarField potential;
  VectorField grad_potential;
  std::optional<HardRoi> hard_roi;

  bool in_roi(const Vector& x) const { return !hard_roi || roi_contains(*hard_roi, x); }

  /// Potential with the hard truncation applied: +inf outside the ROI.
  double restricted_potential(const Vector& x) const;
};

/// U(x) = |x|^2 / 2.
Target gaussian_std(Eigen::Index dim);

/// U(x) = sqrt(x^T diag(a) x) with hard ROI |x| <= radius. The gradient at
/// the origin is defined as zero.
Target norm_potential(const Vector& a_diag, double radius = 3.0);

struct NmfModel {
  RowMatrix X;  // N x D observations
  Eigen::Index K = 4;
  double lambda_W = 1.0;
  double lambda_A = 1.0;
  double sigma = 0.5;
  double mu = 200.0;

  Eigen::Index rows() const { return X.rows(); }
  Eigen::Index cols() const { return X.cols(); }
  Eigen::Index packed_size() const { return X.rows() * K + K * X.cols(); }

  void validate() const;
};

struct NmfGradient {
  RowMatrix dW;
  RowMatrix dA;
};

/// Approximate posterior potential over (W, A): squared residuals over
/// 2 sigma^2, exponential priors, and a softplus barrier at zero per entry.
double nmf_potential(const NmfModel& model, const RowMatrix& W, const RowMatrix& A);
NmfGradient nmf_gradient(const NmfModel& model, const RowMatrix& W, const RowMatrix& A);

/// Row-major W followed by row-major A.
Vector nmf_pack(const RowMatrix& W, const RowMatrix& A);
std::pair<RowMatrix, RowMatrix> nmf_unpack(const NmfModel& model, const Vector& packed);

/// The NMF posterior as a generic target over the packed state. The softplus
/// barriers are already part of the potential, so RBHMC runs it with an empty
/// constraint set. The hard ROI is the non-negative orthant.
Target nmf_target(const NmfModel& model);

}  // namespace rbhmc

#endif
