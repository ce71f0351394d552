#include "rbhmc/kernels.hpp"

#include "rbhmc/constraints.hpp"

#include <cmath>
#include <vector>

namespace rbhmc::kernels {
namespace {

inline double fitted(NmfShape s, std::span<const double> W, std::span<const double> A,
                     std::size_t i, std::size_t j) {
  double v = 0.0;
  for (std::size_t k = 0; k < s.k; ++k) v += W[i * s.k + k] * A[k * s.d + j];
  return v;
}

inline double barrier_row(std::span<const double> M, std::size_t row, std::size_t width,
                          double lambda, double mu) {
  double acc = 0.0;
  for (std::size_t c = 0; c < width; ++c) {
    const double v = M[row * width + c];
    acc += lambda * v + softplus(-mu * v);
  }
  return acc;
}

// Contribution of observation row i and factor row i of W.
inline double potential_row(NmfShape s, const NmfParams& p, std::span<const double> X,
                            std::span<const double> W, std::span<const double> A, std::size_t i) {
  const double inv_two_var = 1.0 / (2.0 * p.sigma * p.sigma);
  double acc = 0.0;
  for (std::size_t j = 0; j < s.d; ++j) {
    const double r = X[i * s.d + j] - fitted(s, W, A, i, j);
    acc += r * r * inv_two_var;
  }
  return acc + barrier_row(W, i, s.k, p.lambda_W, p.mu);
}

inline void residual_row(NmfShape s, std::span<const double> X, std::span<const double> W,
                         std::span<const double> A, std::span<double> R, std::size_t i) {
  for (std::size_t j = 0; j < s.d; ++j) R[i * s.d + j] = X[i * s.d + j] - fitted(s, W, A, i, j);
}

inline void grad_w_row(NmfShape s, const NmfParams& p, std::span<const double> W,
                       std::span<const double> A, std::span<const double> R, std::span<double> dW,
                       std::size_t i) {
  const double inv_var = 1.0 / (p.sigma * p.sigma);
  for (std::size_t k = 0; k < s.k; ++k) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.d; ++j) acc += R[i * s.d + j] * A[k * s.d + j];
    const double w = W[i * s.k + k];
    dW[i * s.k + k] = -acc * inv_var + p.lambda_W - p.mu * logistic(-p.mu * w);
  }
}

// Entry (k, j) of dA, flattened as k * d + j.
inline void grad_a_entry(NmfShape s, const NmfParams& p, std::span<const double> W,
                         std::span<const double> A, std::span<const double> R, std::span<double> dA,
                         std::size_t kj) {
  const std::size_t k = kj / s.d;
  const std::size_t j = kj % s.d;
  const double inv_var = 1.0 / (p.sigma * p.sigma);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.n; ++i) acc += W[i * s.k + k] * R[i * s.d + j];
  dA[kj] = -acc * inv_var + p.lambda_A - p.mu * logistic(-p.mu * A[kj]);
}

inline double abs_diff_row(NmfShape s, std::span<const double> X, std::span<const double> W,
                           std::span<const double> A, std::size_t i) {
  double acc = 0.0;
  for (std::size_t j = 0; j < s.d; ++j) acc += std::abs(X[i * s.d + j] - fitted(s, W, A, i, j));
  return acc;
}

}  // namespace

namespace serial {

double nmf_potential(NmfShape s, const NmfParams& p, std::span<const double> X,
                     std::span<const double> W, std::span<const double> A) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.n; ++i) total += potential_row(s, p, X, W, A, i);
  for (std::size_t k = 0; k < s.k; ++k) total += barrier_row(A, k, s.d, p.lambda_A, p.mu);
  return total;
}

void nmf_gradient(NmfShape s, const NmfParams& p, std::span<const double> X,
                  std::span<const double> W, std::span<const double> A, std::span<double> residual,
                  std::span<double> dW, std::span<double> dA) {
  for (std::size_t i = 0; i < s.n; ++i) residual_row(s, X, W, A, residual, i);
  for (std::size_t i = 0; i < s.n; ++i) grad_w_row(s, p, W, A, residual, dW, i);
  for (std::size_t kj = 0; kj < s.k * s.d; ++kj) grad_a_entry(s, p, W, A, residual, dA, kj);
}

double mean_abs_diff(NmfShape s, std::span<const double> X, std::span<const double> W,
                     std::span<const double> A) {
  double total = 0.0;
  for (std::size_t i = 0; i < s.n; ++i) total += abs_diff_row(s, X, W, A, i);
  return total / static_cast<double>(s.n * s.d);
}

}  // namespace serial

namespace parallel {

double nmf_potential(NmfShape s, const NmfParams& p, std::span<const double> X,
                     std::span<const double> W, std::span<const double> A) {
  std::vector<double> partial(s.n);
  const auto n = static_cast<std::ptrdiff_t>(s.n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) partial[i] = potential_row(s, p, X, W, A, i);
  double total = 0.0;
  for (double v : partial) total += v;
  for (std::size_t k = 0; k < s.k; ++k) total += barrier_row(A, k, s.d, p.lambda_A, p.mu);
  return total;
}

void nmf_gradient(NmfShape s, const NmfParams& p, std::span<const double> X,
                  std::span<const double> W, std::span<const double> A, std::span<double> residual,
                  std::span<double> dW, std::span<double> dA) {
  const auto n = static_cast<std::ptrdiff_t>(s.n);
  const auto kd = static_cast<std::ptrdiff_t>(s.k * s.d);
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) residual_row(s, X, W, A, residual, i);
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) grad_w_row(s, p, W, A, residual, dW, i);
#pragma omp for schedule(static)
    for (std::ptrdiff_t kj = 0; kj < kd; ++kj) grad_a_entry(s, p, W, A, residual, dA, kj);
  }
}

double mean_abs_diff(NmfShape s, std::span<const double> X, std::span<const double> W,
                     std::span<const double> A) {
  std::vector<double> partial(s.n);
  const auto n = static_cast<std::ptrdiff_t>(s.n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) partial[i] = abs_diff_row(s, X, W, A, i);
  double total = 0.0;
  for (double v : partial) total += v;
  return total / static_cast<double>(s.n * s.d);
}

}  // namespace parallel

}  // namespace rbhmc::kernels
