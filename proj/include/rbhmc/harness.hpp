#ifndef RBHMC_HARNESS_HPP
#define RBHMC_HARNESS_HPP

#include "rbhmc/datagen.hpp"
#include "rbhmc/diagnostics.hpp"
#include "rbhmc/io.hpp"
#include "rbhmc/samplers.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace rbhmc {

/// Everything an experiment run produced. Tables flagged as timing hold
/// wall-clock data and are the only output that differs between reruns.
struct ExperimentReport {
  std::string name;
  nlohmann::json config;
  nlohmann::json summary;
  std::vector<io::Table> traces;
  std::vector<io::Table> timing;
  std::vector<std::pair<std::string, Histogram2D>> heatmaps;
  std::vector<std::string> artifacts;
};

/// Writes report.json, one CSV per trace table, and timing_<name>.csv per
/// timing table and <name>.svg per heatmap into `dir`. Fills `report.artifacts`.
void write_report(ExperimentReport& report, const std::filesystem::path& dir);

// 2D truncated Gaussian

struct TruncatedGaussianConfig {
  char boundary = 'b';  // 'a'..'f', see table_boundaries()
  int n_samples = 20000;
  int burn_in = 0;
  double mu = 500.0;
  double step_size = 0.004;
  int steps = 100;
  std::uint64_t seed = 1;
  double half_range = 3.0;
  double bin_width = 0.5;

  nlohmann::json to_json() const;
};

struct TruncatedGaussianResult {
  Chain chain;
  Histogram2D histogram;
  RowMatrix reference;  // bin averages of the renormalized truncated density
  double normalizer = 0.0;
  double l1_error = 0.0;
  double out_of_roi_fraction = 0.0;
  Vector mean;
};

/// Standard 2D Gaussian truncated to the chosen boundary row, restricted to
/// the histogram window and renormalized there by numeric integration.
Density2D truncated_gaussian_density(char boundary, double half_range, double* normalizer = nullptr);

/// Starting point strictly inside the ROI of `boundary`.
Vector truncated_gaussian_init(char boundary);

TruncatedGaussianResult run_truncated_gaussian(const TruncatedGaussianConfig& cfg);
ExperimentReport exp_truncated_gaussian(const TruncatedGaussianConfig& cfg);

// Norm potential on a ball: RBHMC vs reflective vs rejecting HMC

enum class SamplerArm { rbhmc = 0, rhmc = 1, baseline = 2 };
inline constexpr int kWmaeArms = 3;
std::string arm_name(SamplerArm arm);

struct WmaeConfig {
  Eigen::Index dim = 20;
  int rounds = 3;
  double step_size = 0.0167;
  int steps = 600;
  double mu = 100.0;
  double radius = 3.0;
  // Barrier level set g = (R^2 - |x|^2) / (2R), unit gradient on the sphere.
  // When false, g = R^2 - |x|^2 and the barrier is 2R times steeper.
  bool unit_gradient_ball = true;
  int iterations = 2000;       // per arm; 0 = unlimited (requires a time budget)
  double time_budget_s = 0.0;  // per arm; 0 = iteration budget only
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
};

struct ArmTrace {
  std::vector<double> wmae;     // cumulative WMAE after each iteration
  std::vector<double> elapsed;  // seconds since the arm started
  double acceptance_rate = 0.0;
};

struct WmaeRound {
  Vector a_diag;
  Vector init;
  std::array<ArmTrace, kWmaeArms> arms;
};

/// Uniform point in the ball of the given radius.
Vector random_point_in_ball(Eigen::Index dim, double radius, RandomStream& rng);

std::vector<WmaeRound> run_wmae(const WmaeConfig& cfg);
ExperimentReport exp_wmae(const WmaeConfig& cfg);

// Bayesian NMF: RBHMC vs Gibbs

struct NmfExperimentConfig {
  Eigen::Index n = 200;
  Eigen::Index K = 4;
  int iterations = 500;
  int rounds = 3;
  double step_size = 0.002;
  int steps = 200;
  double mu = 200.0;
  double lambda_W = 1.0;
  double lambda_A = 1.0;
  double sigma = 0.5;
  double noise_sd = 0.5;
  int report_burn_in = 100;
  std::uint64_t seed = 1;

  nlohmann::json to_json() const;
};

struct NmfRound {
  std::vector<double> rbhmc_diff;  // mean_abs_diff after each iteration
  std::vector<double> gibbs_diff;
  double rbhmc_acceptance = 0.0;
};

struct NmfSummary {
  double mean = 0.0;            // over rounds and post-burn-in iterations
  double mean_round_sd = 0.0;   // sd across rounds, averaged over post-burn-in iterations
};

struct NmfExperimentResult {
  NmfDataset data;
  std::vector<NmfRound> rounds;
};

NmfExperimentResult run_nmf(const NmfExperimentConfig& cfg);
NmfSummary summarize_nmf(const std::vector<std::vector<double>>& traces, int burn_in);
ExperimentReport exp_nmf(const NmfExperimentConfig& cfg);

}  // namespace rbhmc

#endif
