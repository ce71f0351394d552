#include "rbhmc/diagnostics.hpp"

#include "rbhmc/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rbhmc {

double wmae(const std::vector<Vector>& samples) {
  if (samples.empty()) throw std::invalid_argument("wmae: no samples");
  RunningMean acc(samples.front().size());
  for (const auto& s : samples) acc.push(s);
  return acc.wmae();
}

void RunningMean::push(const Vector& x) {
  if (x.size() != sum_.size()) throw std::invalid_argument("wmae: samples differ in dimension");
  sum_ += x;
  ++count_;
}

double RunningMean::wmae() const {
  if (count_ == 0) throw std::invalid_argument("wmae: no samples");
  return sum_.cwiseAbs().maxCoeff() / static_cast<double>(count_);
}

double mean_abs_diff(const RowMatrix& W, const RowMatrix& A, const RowMatrix& X) {
  if (W.cols() != A.rows() || W.rows() != X.rows() || A.cols() != X.cols()) {
    throw std::invalid_argument("mean_abs_diff: shapes do not conform");
  }
  const kernels::NmfShape s{static_cast<std::size_t>(X.rows()), static_cast<std::size_t>(W.cols()),
                            static_cast<std::size_t>(X.cols())};
  auto view = [](const RowMatrix& M) {
    return std::span<const double>(M.data(), static_cast<std::size_t>(M.size()));
  };
  return kernels::parallel::mean_abs_diff(s, view(X), view(W), view(A));
}

double Histogram2D::bin_area(Eigen::Index ix, Eigen::Index iy) const {
  return (x_edges[ix + 1] - x_edges[ix]) * (y_edges[iy + 1] - y_edges[iy]);
}

namespace {

void check_edges(const std::vector<double>& edges, const char* axis) {
  if (edges.size() < 2) throw std::invalid_argument(std::string("histogram2d: need >= 2 ") + axis + " edges");
  if (!std::is_sorted(edges.begin(), edges.end(), std::less_equal<>{}) ||
      std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument(std::string("histogram2d: ") + axis + " edges must be strictly increasing");
  }
}

// Bin index of v for half-open bins [e_i, e_{i+1}), last bin closed; -1 if outside.
Eigen::Index locate(const std::vector<double>& edges, double v) {
  if (!(v >= edges.front()) || !(v <= edges.back())) return -1;
  if (v == edges.back()) return static_cast<Eigen::Index>(edges.size()) - 2;
  auto it = std::upper_bound(edges.begin(), edges.end(), v);
  return static_cast<Eigen::Index>(it - edges.begin()) - 1;
}

}  // namespace

Histogram2D histogram2d(const std::vector<Vector>& samples, const std::vector<double>& x_edges,
                        const std::vector<double>& y_edges) {
  check_edges(x_edges, "x");
  check_edges(y_edges, "y");
  Histogram2D h;
  h.x_edges = x_edges;
  h.y_edges = y_edges;
  const auto nx = static_cast<Eigen::Index>(x_edges.size()) - 1;
  const auto ny = static_cast<Eigen::Index>(y_edges.size()) - 1;
  h.density = RowMatrix::Zero(nx, ny);
  for (const auto& s : samples) {
    if (s.size() < 2) throw std::invalid_argument("histogram2d: samples must have >= 2 coordinates");
    const auto ix = locate(x_edges, s[0]);
    const auto iy = locate(y_edges, s[1]);
    if (ix < 0 || iy < 0) {
      ++h.overflow;
      continue;
    }
    h.density(ix, iy) += 1.0;
    ++h.in_range;
  }
  if (h.in_range > 0) {
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
      for (Eigen::Index iy = 0; iy < ny; ++iy) {
        h.density(ix, iy) /= static_cast<double>(h.in_range) * h.bin_area(ix, iy);
      }
    }
  }
  return h;
}

std::vector<double> uniform_edges(double lo, double hi, double width) {
  if (!(hi > lo) || !(width > 0.0)) throw std::invalid_argument("uniform_edges: bad range");
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / width));
  std::vector<double> edges(n + 1);
  for (std::size_t i = 0; i <= n; ++i) edges[i] = lo + width * static_cast<double>(i);
  edges.back() = hi;
  return edges;
}

RowMatrix bin_averages(const Histogram2D& h, const Density2D& density, int subdiv) {
  if (subdiv < 1) throw std::invalid_argument("bin_averages: subdiv must be >= 1");
  RowMatrix avg(h.density.rows(), h.density.cols());
  for (Eigen::Index ix = 0; ix < avg.rows(); ++ix) {
    const double x0 = h.x_edges[ix];
    const double dx = (h.x_edges[ix + 1] - x0) / subdiv;
    for (Eigen::Index iy = 0; iy < avg.cols(); ++iy) {
      const double y0 = h.y_edges[iy];
      const double dy = (h.y_edges[iy + 1] - y0) / subdiv;
      double acc = 0.0;
      for (int a = 0; a < subdiv; ++a) {
        for (int b = 0; b < subdiv; ++b) acc += density(x0 + (a + 0.5) * dx, y0 + (b + 0.5) * dy);
      }
      avg(ix, iy) = acc / (subdiv * subdiv);
    }
  }
  return avg;
}

double hist_l1_error(const Histogram2D& h, const Density2D& density, int subdiv) {
  const RowMatrix avg = bin_averages(h, density, subdiv);
  double err = 0.0;
  for (Eigen::Index ix = 0; ix < avg.rows(); ++ix) {
    for (Eigen::Index iy = 0; iy < avg.cols(); ++iy) {
      err += std::abs(avg(ix, iy) - h.density(ix, iy)) * h.bin_area(ix, iy);
    }
  }
  return err;
}

}  // namespace rbhmc
