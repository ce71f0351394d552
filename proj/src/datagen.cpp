#include "rbhmc/datagen.hpp"

#include <cmath>
#include <stdexcept>

namespace rbhmc {

RowMatrix base_images() {
  RowMatrix A = RowMatrix::Zero(kBaseImages, kImagePixels);
  constexpr Eigen::Index half = kImageSide / 2;
  for (Eigen::Index b = 0; b < kBaseImages; ++b) {
    const Eigen::Index row0 = (b / 2) * half;
    const Eigen::Index col0 = (b % 2) * half;
    for (Eigen::Index r = row0; r < row0 + half; ++r) {
      for (Eigen::Index c = col0; c < col0 + half; ++c) A(b, r * kImageSide + c) = 1.0;
    }
  }
  return A;
}

NmfDataset gen_nmf_dataset(Eigen::Index n, double noise_sd, RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("gen_nmf_dataset: n must be >= 1");
  if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) {
    throw std::invalid_argument("gen_nmf_dataset: noise_sd must be non-negative");
  }
  NmfDataset ds;
  ds.noise_sd = noise_sd;
  ds.seed = rng.seed();
  ds.stream = rng.stream();
  ds.A_true = base_images();
  ds.W_true.resize(n, kBaseImages);
  for (Eigen::Index i = 0; i < ds.W_true.size(); ++i) ds.W_true.data()[i] = rng.uniform() < 0.5 ? 1.0 : 0.0;
  ds.X = ds.W_true * ds.A_true;
  if (noise_sd > 0.0) {
    for (Eigen::Index i = 0; i < ds.X.size(); ++i) ds.X.data()[i] += noise_sd * rng.normal();
  }
  return ds;
}

Vector gen_diag_A(Eigen::Index dim, RandomStream& rng) {
  if (dim < 1) throw std::invalid_argument("gen_diag_A: dim must be >= 1");
  Vector a(dim);
  for (Eigen::Index d = 0; d < dim; ++d) a[d] = rng.uniform() < 0.5 ? std::exp(5.0) : std::exp(-5.0);
  return a;
}

}  // namespace rbhmc
