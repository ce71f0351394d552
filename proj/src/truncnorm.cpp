#include "rbhmc/random.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <stdexcept>

namespace rbhmc {

namespace {

constexpr double kTailSwitch = 4.0;

// Standard normal on [alpha, inf), alpha > 0, by exponential proposals with
// the optimal rate.
double standard_tail(double alpha, RandomStream& rng) {
  const double rate = 0.5 * (alpha + std::sqrt(alpha * alpha + 4.0));
  for (;;) {
    const double z = alpha - std::log(rng.open_uniform()) / rate;
    const double d = z - rate;
    if (rng.uniform() < std::exp(-0.5 * d * d)) return z;
  }
}

// Standard normal on [alpha, inf) by inverting the upper-tail CDF.
double standard_inverse_cdf(double alpha, RandomStream& rng) {
  const double upper_mass = 0.5 * std::erfc(alpha / std::sqrt(2.0));
  const double t = rng.open_uniform() * upper_mass;
  const double z = std::sqrt(2.0) * boost::math::erfc_inv(2.0 * t);
  return std::max(z, alpha);
}

}  // namespace

double truncated_normal_lower(double mean, double sd, double lower, RandomStream& rng) {
  if (!(sd > 0.0) || !std::isfinite(sd) || !std::isfinite(mean) || !std::isfinite(lower)) {
    throw std::invalid_argument("truncated_normal_lower: invalid parameters");
  }
  const double alpha = (lower - mean) / sd;
  const double z = alpha > kTailSwitch ? standard_tail(alpha, rng) : standard_inverse_cdf(alpha, rng);
  return std::max(mean + sd * z, lower);
}

double exponential(double rate, RandomStream& rng) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be positive");
  return -std::log(rng.open_uniform()) / rate;
}

}  // namespace rbhmc
