#ifndef RBHMC_COMMON_HPP
#define RBHMC_COMMON_HPP

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>

namespace rbhmc {

using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using ScalarField = std::function<double(const Vector&)>;
using VectorField = std::function<Vector(const Vector&)>;

/// Raised when a leapfrog trajectory produces a non-finite state.
class DivergedTrajectory : public std::runtime_error {
 public:
  DivergedTrajectory(int step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  int step() const noexcept { return step_; }

 private:
  int step_;
};

/// Raised by the reflective sampler for ROI shapes without analytic intersections.
class UnsupportedGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rbhmc

#endif
