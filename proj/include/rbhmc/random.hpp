#ifndef RBHMC_RANDOM_HPP
#define RBHMC_RANDOM_HPP

#include <cstdint>
#include <random>

namespace rbhmc {

/// Seeded generator for one chain. Streams with the same master seed and
/// different stream ids are independent; the same (seed, stream) pair always
/// replays the same sequence.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  double normal() { return normal_(engine_); }
  /// Uniform on [0, 1).
  double uniform() { return uniform_(engine_); }
  /// Uniform on (0, 1).
  double open_uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Sample from Normal(mean, sd^2) restricted to [lower, inf). Uses the inverse
/// CDF in the bulk and an exponential-proposal rejection sampler once the
/// standardized bound exceeds 4.
double truncated_normal_lower(double mean, double sd, double lower, RandomStream& rng);

double exponential(double rate, RandomStream& rng);

}  // namespace rbhmc

#endif
