#include "rbhmc/harness.hpp"

#include <array>
#include <chrono>
#include <memory>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rbhmc {

void write_report(ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  report.artifacts.clear();
  for (const auto& t : report.traces) {
    const auto path = dir / (t.name + ".csv");
    io::write_table_csv(path, t);
    report.artifacts.push_back(path.filename().string());
  }
  for (const auto& t : report.timing) {
    const auto path = dir / ("timing_" + t.name + ".csv");
    io::write_table_csv(path, t);
    report.artifacts.push_back(path.filename().string());
  }
  for (const auto& [name, h] : report.heatmaps) {
    const auto path = dir / (name + ".svg");
    io::write_heatmap_svg(path, h);
    report.artifacts.push_back(path.filename().string());
  }
  nlohmann::json j;
  j["experiment"] = report.name;
  j["config"] = report.config;
  j["summary"] = report.summary;
  j["artifacts"] = report.artifacts;
  io::write_json(dir / "report.json", j);
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

std::vector<double> iota_column(std::size_t n) {
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<double>(i);
  return c;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

// 2D truncated Gaussian

nlohmann::json TruncatedGaussianConfig::to_json() const {
  return {{"boundary", std::string(1, boundary)}, {"n_samples", n_samples}, {"burn_in", burn_in},
          {"mu", mu}, {"step_size", step_size}, {"steps", steps}, {"seed", seed},
          {"half_range", half_range}, {"bin_width", bin_width}};
}

Density2D truncated_gaussian_density(char boundary, double half_range, double* normalizer) {
  table_roi_contains(boundary, 0.0, 0.0);  // validates the row
  constexpr double kCell = 0.005;
  const auto cells = static_cast<int>(std::llround(2.0 * half_range / kCell));
  const double h = 2.0 * half_range / cells;
  double z = 0.0;
  for (int a = 0; a < cells; ++a) {
    const double x = -half_range + (a + 0.5) * h;
    const double px = std_normal_pdf(x);
    for (int b = 0; b < cells; ++b) {
      const double y = -half_range + (b + 0.5) * h;
      if (table_roi_contains(boundary, x, y)) z += px * std_normal_pdf(y);
    }
  }
  z *= h * h;
  if (normalizer) *normalizer = z;
  return [boundary, z, half_range](double x, double y) {
    if (std::abs(x) > half_range || std::abs(y) > half_range) return 0.0;
    if (!table_roi_contains(boundary, x, y)) return 0.0;
    return std_normal_pdf(x) * std_normal_pdf(y) / z;
  };
}

Vector truncated_gaussian_init(char boundary) {
  switch (boundary) {
    case 'a': case 'd': return Vector{{0.0, 0.0}};
    case 'b': case 'e': return Vector{{0.0, 0.5}};
    case 'c': return Vector{{1.0, 0.5}};
    case 'f': return Vector{{1.0, 0.0}};
    default: throw std::invalid_argument(std::string("unknown boundary row '") + boundary + "'");
  }
}

TruncatedGaussianResult run_truncated_gaussian(const TruncatedGaussianConfig& cfg) {
  const ConstraintSet constraints = table_boundaries(cfg.boundary, cfg.mu);
  const Target target = gaussian_std(2);
  HmcConfig hmc;
  hmc.leapfrog = {cfg.step_size, cfg.steps};
  hmc.n_samples = cfg.n_samples;
  hmc.burn_in = cfg.burn_in;
  hmc.init = truncated_gaussian_init(cfg.boundary);
  RandomStream rng(cfg.seed, 0);

  TruncatedGaussianResult r;
  r.chain = rbhmc(target, constraints, hmc, rng);
  const auto edges = uniform_edges(-cfg.half_range, cfg.half_range, cfg.bin_width);
  r.histogram = histogram2d(r.chain.samples, edges, edges);
  const Density2D density = truncated_gaussian_density(cfg.boundary, cfg.half_range, &r.normalizer);
  r.reference = bin_averages(r.histogram, density);
  r.l1_error = hist_l1_error(r.histogram, density);
  std::size_t outside = 0;
  r.mean = Vector::Zero(2);
  for (const auto& s : r.chain.samples) {
    if (!table_roi_contains(cfg.boundary, s[0], s[1])) ++outside;
    r.mean += s;
  }
  r.mean /= static_cast<double>(r.chain.size());
  r.out_of_roi_fraction = static_cast<double>(outside) / static_cast<double>(r.chain.size());
  return r;
}

ExperimentReport exp_truncated_gaussian(const TruncatedGaussianConfig& cfg) {
  const auto r = run_truncated_gaussian(cfg);
  ExperimentReport rep;
  rep.name = "truncated-gaussian";
  rep.config = cfg.to_json();
  rep.summary = {{"l1_error", r.l1_error},
                 {"out_of_roi_fraction", r.out_of_roi_fraction},
                 {"mean", {r.mean[0], r.mean[1]}},
                 {"acceptance_rate", r.chain.acceptance_rate()},
                 {"normalizer", r.normalizer},
                 {"histogram_overflow", r.histogram.overflow}};

  io::Table chain{"chain", {"iter", "accepted", "energy", "x0", "x1"}, {}};
  chain.data.assign(5, {});
  for (std::size_t i = 0; i < r.chain.size(); ++i) {
    chain.data[0].push_back(static_cast<double>(i));
    chain.data[1].push_back(r.chain.accepted[i]);
    chain.data[2].push_back(r.chain.energies[i]);
    chain.data[3].push_back(r.chain.samples[i][0]);
    chain.data[4].push_back(r.chain.samples[i][1]);
  }
  io::Table hist{"histogram", {"x_lo", "x_hi", "y_lo", "y_hi", "density", "reference"}, {}};
  hist.data.assign(6, {});
  const auto& h = r.histogram;
  for (Eigen::Index ix = 0; ix < h.density.rows(); ++ix) {
    for (Eigen::Index iy = 0; iy < h.density.cols(); ++iy) {
      hist.data[0].push_back(h.x_edges[ix]);
      hist.data[1].push_back(h.x_edges[ix + 1]);
      hist.data[2].push_back(h.y_edges[iy]);
      hist.data[3].push_back(h.y_edges[iy + 1]);
      hist.data[4].push_back(h.density(ix, iy));
      hist.data[5].push_back(r.reference(ix, iy));
    }
  }
  rep.traces = {std::move(chain), std::move(hist)};
  rep.heatmaps.emplace_back("histogram", r.histogram);
  return rep;
}

// WMAE study

std::string arm_name(SamplerArm arm) {
  switch (arm) {
    case SamplerArm::rbhmc: return "rbhmc";
    case SamplerArm::rhmc: return "rhmc";
    case SamplerArm::baseline: return "baseline";
  }
  throw std::invalid_argument("unknown sampler arm");
}

nlohmann::json WmaeConfig::to_json() const {
  return {{"dim", dim}, {"rounds", rounds}, {"step_size", step_size}, {"steps", steps},
          {"mu", mu}, {"radius", radius}, {"unit_gradient_ball", unit_gradient_ball},
          {"iterations", iterations},
          {"time_budget_s", time_budget_s}, {"seed", seed}};
}

Vector random_point_in_ball(Eigen::Index dim, double radius, RandomStream& rng) {
  Vector dir(dim);
  for (Eigen::Index d = 0; d < dim; ++d) dir[d] = rng.normal();
  dir.normalize();
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
  return r * dir;
}

std::vector<WmaeRound> run_wmae(const WmaeConfig& cfg) {
  if (cfg.dim < 1 || cfg.rounds < 1) throw std::invalid_argument("wmae: dim and rounds must be >= 1");
  if (cfg.iterations <= 0 && !(cfg.time_budget_s > 0.0)) {
    throw std::invalid_argument("wmae: need an iteration or a time budget");
  }
  std::vector<WmaeRound> rounds(static_cast<std::size_t>(cfg.rounds));
  for (int r = 0; r < cfg.rounds; ++r) {
    RandomStream setup(cfg.seed, 1000 + static_cast<std::uint64_t>(r));
    rounds[r].a_diag = gen_diag_A(cfg.dim, setup);
    rounds[r].init = random_point_in_ball(cfg.dim, cfg.radius, setup);
  }

  const int tasks = cfg.rounds * kWmaeArms;
#pragma omp parallel for schedule(dynamic)
  for (int task = 0; task < tasks; ++task) {
    const int r = task / kWmaeArms;
    const auto arm = static_cast<SamplerArm>(task % kWmaeArms);
    WmaeRound& round = rounds[r];
    const Target target = norm_potential(round.a_diag, cfg.radius);
    ConstraintSet ball;
    BoundaryParams bp;
    bp.radius = cfg.radius;
    if (cfg.unit_gradient_ball) bp.scale = 1.0 / (2.0 * cfg.radius);
    ball.add(builtin_constraint(BoundaryKind::ball, cfg.mu, bp));
    HmcConfig hmc;
    hmc.leapfrog = {cfg.step_size, cfg.steps};
    hmc.init = round.init;
    hmc.n_samples = 1;

    std::unique_ptr<HmcKernel> kernel;
    switch (arm) {
      case SamplerArm::rbhmc: kernel = std::make_unique<RollbackHmc>(target, ball, hmc); break;
      case SamplerArm::rhmc: kernel = std::make_unique<ReflectiveHmc>(target, hmc); break;
      case SamplerArm::baseline: kernel = std::make_unique<RejectingHmc>(target, hmc); break;
    }
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(task) + 1);
    ArmTrace& trace = round.arms[static_cast<std::size_t>(arm)];
    RunningMean running(cfg.dim);
    std::size_t accepted = 0;
    const auto start = std::chrono::steady_clock::now();
    for (int it = 0; cfg.iterations <= 0 || it < cfg.iterations; ++it) {
      if (cfg.time_budget_s > 0.0 && seconds_since(start) >= cfg.time_budget_s) break;
      accepted += kernel->step(rng).accepted ? 1 : 0;
      running.push(kernel->position());
      trace.wmae.push_back(running.wmae());
      trace.elapsed.push_back(seconds_since(start));
    }
    trace.acceptance_rate =
        trace.wmae.empty() ? 0.0 : static_cast<double>(accepted) / static_cast<double>(trace.wmae.size());
  }
  return rounds;
}

ExperimentReport exp_wmae(const WmaeConfig& cfg) {
  const auto rounds = run_wmae(cfg);
  ExperimentReport rep;
  rep.name = "wmae";
  rep.config = cfg.to_json();
  nlohmann::json arms = nlohmann::json::object();
  for (int a = 0; a < kWmaeArms; ++a) {
    const auto name = arm_name(static_cast<SamplerArm>(a));
    std::vector<double> finals, acceptance;
    for (std::size_t r = 0; r < rounds.size(); ++r) {
      const ArmTrace& t = rounds[r].arms[a];
      finals.push_back(t.wmae.empty() ? 0.0 : t.wmae.back());
      acceptance.push_back(t.acceptance_rate);
      const std::string tag = "wmae_r" + std::to_string(r) + "_" + name;
      rep.traces.push_back({tag, {"iter", "wmae"}, {iota_column(t.wmae.size()), t.wmae}});
      rep.timing.push_back({tag, {"iter", "elapsed_s", "wmae"}, {iota_column(t.wmae.size()), t.elapsed, t.wmae}});
    }
    arms[name] = {{"final_wmae", finals}, {"final_wmae_mean", mean_of(finals)},
                  {"final_wmae_sd", sd_of(finals)}, {"acceptance_rate", acceptance}};
  }
  nlohmann::json setup = nlohmann::json::array();
  for (const auto& r : rounds) {
    setup.push_back({{"a_diag", std::vector<double>(r.a_diag.data(), r.a_diag.data() + r.a_diag.size())},
                     {"init", std::vector<double>(r.init.data(), r.init.data() + r.init.size())}});
  }
  rep.summary = {{"arms", arms}, {"rounds", setup}};
  return rep;
}

// Bayesian NMF

nlohmann::json NmfExperimentConfig::to_json() const {
  return {{"n", n}, {"K", K}, {"iterations", iterations}, {"rounds", rounds},
          {"step_size", step_size}, {"steps", steps}, {"mu", mu}, {"lambda_W", lambda_W},
          {"lambda_A", lambda_A}, {"sigma", sigma}, {"noise_sd", noise_sd},
          {"report_burn_in", report_burn_in}, {"seed", seed}};
}

NmfExperimentResult run_nmf(const NmfExperimentConfig& cfg) {
  if (cfg.rounds < 1 || cfg.iterations < 1) throw std::invalid_argument("nmf: rounds and iterations must be >= 1");
  NmfExperimentResult result;
  RandomStream data_rng(cfg.seed, 0);
  result.data = gen_nmf_dataset(cfg.n, cfg.noise_sd, data_rng);

  NmfModel model;
  model.X = result.data.X;
  model.K = cfg.K;
  model.lambda_W = cfg.lambda_W;
  model.lambda_A = cfg.lambda_A;
  model.sigma = cfg.sigma;
  model.mu = cfg.mu;
  model.validate();
  const Target target = nmf_target(model);
  const ConstraintSet no_constraints;

  std::vector<std::pair<RowMatrix, RowMatrix>> inits;
  for (int r = 0; r < cfg.rounds; ++r) {
    RandomStream init_rng(cfg.seed, 1000 + static_cast<std::uint64_t>(r));
    inits.push_back(nmf_random_init(model, init_rng));
  }
  result.rounds.resize(static_cast<std::size_t>(cfg.rounds));

  const int tasks = 2 * cfg.rounds;
#pragma omp parallel for schedule(dynamic)
  for (int task = 0; task < tasks; ++task) {
    const int r = task / 2;
    NmfRound& round = result.rounds[r];
    const auto& [W0, A0] = inits[r];
    if (task % 2 == 0) {
      RandomStream rng(cfg.seed, 2000 + static_cast<std::uint64_t>(r));
      HmcConfig hmc;
      hmc.leapfrog = {cfg.step_size, cfg.steps};
      hmc.init = nmf_pack(W0, A0);
      hmc.n_samples = cfg.iterations;
      RollbackHmc kernel(target, no_constraints, hmc);
      std::size_t accepted = 0;
      for (int it = 0; it < cfg.iterations; ++it) {
        accepted += kernel.step(rng).accepted ? 1 : 0;
        const auto [W, A] = nmf_unpack(model, kernel.position());
        round.rbhmc_diff.push_back(mean_abs_diff(W, A, model.X));
      }
      round.rbhmc_acceptance = static_cast<double>(accepted) / cfg.iterations;
    } else {
      RandomStream rng(cfg.seed, 3000 + static_cast<std::uint64_t>(r));
      GibbsNmf gibbs(model, W0, A0);
      for (int it = 0; it < cfg.iterations; ++it) {
        gibbs.sweep(rng);
        round.gibbs_diff.push_back(mean_abs_diff(gibbs.W(), gibbs.A(), model.X));
      }
    }
  }
  return result;
}

NmfSummary summarize_nmf(const std::vector<std::vector<double>>& traces, int burn_in) {
  NmfSummary s;
  if (traces.empty()) return s;
  const std::size_t iters = traces.front().size();
  const auto first = static_cast<std::size_t>(std::max(burn_in, 0));
  if (first >= iters) throw std::invalid_argument("nmf summary: burn-in covers the whole trace");
  double total = 0.0;
  double sd_total = 0.0;
  std::size_t count = 0;
  for (std::size_t it = first; it < iters; ++it) {
    std::vector<double> column;
    for (const auto& t : traces) {
      column.push_back(t[it]);
      total += t[it];
      ++count;
    }
    sd_total += sd_of(column);
  }
  s.mean = total / static_cast<double>(count);
  s.mean_round_sd = sd_total / static_cast<double>(iters - first);
  return s;
}

ExperimentReport exp_nmf(const NmfExperimentConfig& cfg) {
  const auto result = run_nmf(cfg);
  ExperimentReport rep;
  rep.name = "nmf";
  rep.config = cfg.to_json();
  std::vector<std::vector<double>> rb, gb;
  std::vector<double> acceptance;
  for (std::size_t r = 0; r < result.rounds.size(); ++r) {
    const auto& round = result.rounds[r];
    rb.push_back(round.rbhmc_diff);
    gb.push_back(round.gibbs_diff);
    acceptance.push_back(round.rbhmc_acceptance);
    rep.traces.push_back({"diff_r" + std::to_string(r),
                          {"iter", "rbhmc", "gibbs"},
                          {iota_column(round.rbhmc_diff.size()), round.rbhmc_diff, round.gibbs_diff}});
  }
  const auto rs = summarize_nmf(rb, cfg.report_burn_in);
  const auto gs = summarize_nmf(gb, cfg.report_burn_in);
  rep.summary = {
      {"rbhmc", {{"mean_diff", rs.mean}, {"mean_round_sd", rs.mean_round_sd}, {"acceptance_rate", acceptance}}},
      {"gibbs", {{"mean_diff", gs.mean}, {"mean_round_sd", gs.mean_round_sd}}},
      {"noise_floor", cfg.noise_sd * std::sqrt(2.0 / std::numbers::pi)},
      {"published_reference", {{"rbhmc", 0.4023819}, {"gibbs", 0.4065109}, {"gating", false}}}};
  return rep;
}

}  // namespace rbhmc
