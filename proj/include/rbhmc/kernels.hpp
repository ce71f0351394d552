#ifndef RBHMC_KERNELS_HPP
#define RBHMC_KERNELS_HPP

#include <cstddef>
#include <span>

// Dense loops for the NMF model. Every kernel exists twice: a serial
// reference and an OpenMP version. Both accumulate in the same order, so
// their results are bit-identical for any thread count.
namespace rbhmc::kernels {

/// Problem shape. All matrices are row-major: X is n x d, W is n x k, A is k x d.
struct NmfShape {
  std::size_t n;
  std::size_t k;
  std::size_t d;
};

struct NmfParams {
  double lambda_W;
  double lambda_A;
  double sigma;
  double mu;
};

namespace serial {

double nmf_potential(NmfShape s, const NmfParams& p, std::span<const double> X,
                     std::span<const double> W, std::span<const double> A);

/// Writes dW (n x k) and dA (k x d). `residual` is n x d scratch.
void nmf_gradient(NmfShape s, const NmfParams& p, std::span<const double> X,
                  std::span<const double> W, std::span<const double> A, std::span<double> residual,
                  std::span<double> dW, std::span<double> dA);

double mean_abs_diff(NmfShape s, std::span<const double> X, std::span<const double> W,
                     std::span<const double> A);

}  // namespace serial

namespace parallel {

double nmf_potential(NmfShape s, const NmfParams& p, std::span<const double> X,
                     std::span<const double> W, std::span<const double> A);

void nmf_gradient(NmfShape s, const NmfParams& p, std::span<const double> X,
                  std::span<const double> W, std::span<const double> A, std::span<double> residual,
                  std::span<double> dW, std::span<double> dA);

double mean_abs_diff(NmfShape s, std::span<const double> X, std::span<const double> W,
                     std::span<const double> A);

}  // namespace parallel

}  // namespace rbhmc::kernels

#endif
