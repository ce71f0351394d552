#ifndef RBHMC_DIAGNOSTICS_HPP
#define RBHMC_DIAGNOSTICS_HPP

#include "rbhmc/common.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace rbhmc {

/// Worst mean absolute error: max over dimensions of |mean of that component|.
double wmae(const std::vector<Vector>& samples);

/// Per-dimension running mean of every sample seen so far.
class RunningMean {
 public:
  explicit RunningMean(Eigen::Index dim) : sum_(Vector::Zero(dim)) {}

  void push(const Vector& x);
  /// WMAE of all samples pushed so far.
  double wmae() const;
  Vector mean() const { return sum_ / static_cast<double>(count_); }
  std::size_t count() const { return count_; }

 private:
  Vector sum_;
  std::size_t count_ = 0;
};

/// (1 / (N D)) sum |X - W A|.
double mean_abs_diff(const RowMatrix& W, const RowMatrix& A, const RowMatrix& X);

struct Histogram2D {
  std::vector<double> x_edges;
  std::vector<double> y_edges;
  RowMatrix density;  // (x bins) x (y bins)
  std::size_t in_range = 0;
  std::size_t overflow = 0;

  double bin_area(Eigen::Index ix, Eigen::Index iy) const;
};

/// Normalized 2D histogram of the first two coordinates. Samples outside the
/// edges are excluded from the normalization and counted in `overflow`.
Histogram2D histogram2d(const std::vector<Vector>& samples, const std::vector<double>& x_edges,
                        const std::vector<double>& y_edges);

/// Evenly spaced edges lo, lo + width, ..., hi.
std::vector<double> uniform_edges(double lo, double hi, double width);

using Density2D = std::function<double(double, double)>;

/// Bin averages of `density` by the midpoint rule on a subdiv x subdiv grid.
RowMatrix bin_averages(const Histogram2D& h, const Density2D& density, int subdiv = 4);

/// sum over bins |bin average of density - histogram density| * bin area.
double hist_l1_error(const Histogram2D& h, const Density2D& density, int subdiv = 4);

}  // namespace rbhmc

#endif
