#ifndef RBHMC_DATAGEN_HPP
#define RBHMC_DATAGEN_HPP

#include "rbhmc/common.hpp"
#include "rbhmc/random.hpp"

#include <cstdint>

namespace rbhmc {

inline constexpr Eigen::Index kImageSide = 6;
inline constexpr Eigen::Index kImagePixels = kImageSide * kImageSide;
inline constexpr Eigen::Index kBaseImages = 4;

/// Four binary 6x6 images, one per 3x3 corner block, flattened row-major.
RowMatrix base_images();

struct NmfDataset {
  RowMatrix X;       // n x 36
  RowMatrix W_true;  // n x 4, entries in {0, 1}
  RowMatrix A_true;  // 4 x 36
  double noise_sd = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// X = W_true A_true + Normal(0, noise_sd^2) noise, W_true ~ Bernoulli(1/2).
/// All presence flags are drawn before any noise.
NmfDataset gen_nmf_dataset(Eigen::Index n, double noise_sd, RandomStream& rng);

/// Diagonal entries drawn from {e^5, e^-5} with equal probability.
Vector gen_diag_A(Eigen::Index dim, RandomStream& rng);

}  // namespace rbhmc

#endif
