// Command-line front end: sample, experiment, gen.
//
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include "rbhmc/constraints.hpp"
#include "rbhmc/datagen.hpp"
#include "rbhmc/harness.hpp"
#include "rbhmc/integrator.hpp"
#include "rbhmc/io.hpp"
#include "rbhmc/samplers.hpp"
#include "rbhmc/targets.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace rbhmc;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

double parse_number(const std::string& field, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(field + ": '" + text + "' is not a number");
}

std::vector<double> parse_list(const std::string& field, const std::string& text, char sep) {
  std::vector<double> out;
  for (const auto& part : split(text, sep)) out.push_back(parse_number(field, part));
  if (out.empty()) throw ConfigError(field + ": empty list");
  return out;
}

Vector to_vector(const std::vector<double>& v) { return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size())); }

// A parsed --constraint flag.
struct ConstraintSpec {
  std::string text;
  BoundaryKind kind;
  double mu = 0.0;
  BoundaryParams params;
};

// name:mu=V[,radius=V,scale=V,offset=V,normal=a/b/...]
ConstraintSpec parse_constraint(const std::string& text) {
  const std::string field = "--constraint '" + text + "'";
  const auto colon = text.find(':');
  ConstraintSpec spec;
  spec.text = text;
  try {
    spec.kind = parse_boundary_kind(text.substr(0, colon));
  } catch (const std::invalid_argument&) {
    throw ConfigError(field + ": unknown constraint name '" + text.substr(0, colon) + "'");
  }
  bool have_mu = false;
  if (colon != std::string::npos) {
    for (const auto& kv : split(text.substr(colon + 1), ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError(field + ": expected key=value, got '" + kv + "'");
      const auto key = kv.substr(0, eq);
      const auto val = kv.substr(eq + 1);
      if (key == "mu") {
        spec.mu = parse_number(field + " mu", val);
        have_mu = true;
      } else if (key == "radius") {
        spec.params.radius = parse_number(field + " radius", val);
      } else if (key == "scale") {
        spec.params.scale = parse_number(field + " scale", val);
      } else if (key == "offset") {
        spec.params.offset = parse_number(field + " offset", val);
      } else if (key == "normal") {
        spec.params.normal = to_vector(parse_list(field + " normal", val, '/'));
      } else {
        throw ConfigError(field + ": unknown parameter '" + key + "'");
      }
    }
  }
  if (!have_mu) throw ConfigError(field + ": mu is required");
  if (!(spec.mu > 0.0)) throw ConfigError(field + ": mu must be positive");
  if (spec.kind == BoundaryKind::hyperplane && spec.params.normal.size() == 0) {
    throw ConfigError(field + ": hyperplane needs normal=a/b/...");
  }
  return spec;
}

// Hard ROI equivalent to a list of constraints, for the exact samplers.
std::optional<HardRoi> roi_from_constraints(const std::vector<ConstraintSpec>& specs) {
  if (specs.empty()) return std::nullopt;
  HalfspaceRoi half;
  std::optional<double> radius;
  bool other = false;
  for (const auto& s : specs) {
    switch (s.kind) {
      case BoundaryKind::halfplane_y: half.normals.push_back(Vector{{0.0, 1.0}}); half.offsets.push_back(0.0); break;
      case BoundaryKind::halfplane_diag: half.normals.push_back(Vector{{1.0, -1.0}}); half.offsets.push_back(0.0); break;
      case BoundaryKind::hyperplane: half.normals.push_back(s.params.normal); half.offsets.push_back(s.params.offset); break;
      case BoundaryKind::disk2: radius = std::sqrt(2.0); break;
      case BoundaryKind::ball: radius = s.params.radius; break;
      case BoundaryKind::parabola: other = true; break;
    }
  }
  const bool single_ball = radius && half.normals.empty() && !other && specs.size() == 1;
  if (single_ball) return BallRoi{*radius};
  if (!radius && !other) return half;
  // Mixed geometry: membership only.
  std::vector<Constraint> cs;
  for (const auto& s : specs) cs.push_back(builtin_constraint(s.kind, s.mu, s.params));
  return CustomRoi{[cs](const Vector& x) {
    for (const auto& c : cs) {
      if (c.g(x) < 0.0) return false;
    }
    return true;
  }};
}

fs::path output_dir(const std::string& explicit_out, const std::string& tag, std::uint64_t seed) {
  if (!explicit_out.empty()) return explicit_out;
  const char* env = std::getenv("RBHMC_OUT_ROOT");
  const fs::path root = env && *env ? env : "runs";
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", std::localtime(&now));
  return root / (tag + "-" + stamp + "-seed" + std::to_string(seed));
}

// sample

struct SampleOptions {
  std::string target = "gaussian2d";
  std::string sampler = "rbhmc";
  std::vector<std::string> constraints;
  int dim = 0;
  std::string a_diag;
  double radius = 3.0;
  std::string data;
  int K = 4;
  double lambda_W = 1.0, lambda_A = 1.0, sigma = 0.5, nmf_mu = 200.0;
  double eps = 0.0;
  int L = 0;
  double mass = 1.0;
  int n = 1000;
  int burn_in = 0;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::string init;
  std::string out;
};

json sample_echo(const SampleOptions& o) {
  json j = {{"target", o.target}, {"sampler", o.sampler}, {"constraints", o.constraints},
            {"eps", o.eps}, {"L", o.L}, {"mass", o.mass}, {"n", o.n}, {"burn_in", o.burn_in},
            {"seed", o.seed}, {"stream", o.stream}};
  if (o.dim) j["dim"] = o.dim;
  if (!o.a_diag.empty()) j["a"] = o.a_diag;
  if (o.target == "norm") j["radius"] = o.radius;
  if (o.target == "nmf") {
    j["data"] = o.data;
    j["K"] = o.K;
    j["lambda_W"] = o.lambda_W;
    j["lambda_A"] = o.lambda_A;
    j["sigma"] = o.sigma;
    j["nmf_mu"] = o.nmf_mu;
  }
  if (!o.init.empty()) j["init"] = o.init;
  return j;
}

Target exponential_1d() {
  Target t;
  t.dim = 1;
  t.potential = [](const Vector& x) { return x[0]; };
  t.grad_potential = [](const Vector&) -> Vector { return Vector{{1.0}}; };
  return t;
}

int run_sample(const SampleOptions& o) {
  std::vector<ConstraintSpec> specs;
  for (const auto& c : o.constraints) specs.push_back(parse_constraint(c));

  Target target;
  NmfModel model;
  double bound = std::numeric_limits<double>::infinity();
  if (o.target == "gaussian2d") {
    target = gaussian_std(2);
  } else if (o.target == "gaussian") {
    if (o.dim < 1) throw ConfigError("--dim: required and >= 1 for target gaussian");
    target = gaussian_std(o.dim);
  } else if (o.target == "exponential1d") {
    target = exponential_1d();
  } else if (o.target == "norm") {
    Vector a;
    if (!o.a_diag.empty()) {
      a = to_vector(parse_list("--a", o.a_diag, ','));
    } else {
      if (o.dim < 1) throw ConfigError("--dim: required for target norm unless --a is given");
      RandomStream setup(o.seed, 1000);
      a = gen_diag_A(o.dim, setup);
    }
    if (!(o.radius > 0.0)) throw ConfigError("--radius: must be positive");
    target = norm_potential(a, o.radius);
  } else if (o.target == "nmf") {
    if (o.data.empty()) throw ConfigError("--data: required for target nmf");
    if (!specs.empty()) throw ConfigError("--constraint: the nmf target carries its own non-negativity barrier");
    try {
      model.X = io::read_matrix_csv(o.data);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("--data: ") + e.what());
    }
    model.K = o.K;
    model.lambda_W = o.lambda_W;
    model.lambda_A = o.lambda_A;
    model.sigma = o.sigma;
    model.mu = o.nmf_mu;
    try {
      model.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("nmf model: ") + e.what());
    }
    target = nmf_target(model);
    bound = step_size_bound(model.mu, o.mass, 1.0);
  }

  if (o.sampler == "gibbs" && o.target != "nmf") throw ConfigError("--sampler: gibbs only applies to target nmf");
  if ((o.sampler == "baseline" || o.sampler == "rhmc") && !target.hard_roi) {
    target.hard_roi = roi_from_constraints(specs);
    if (!target.hard_roi) throw ConfigError("--sampler: " + o.sampler + " needs a truncated target");
  }

  ConstraintSet cs;
  for (const auto& s : specs) {
    try {
      cs.add(builtin_constraint(s.kind, s.mu, s.params));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--constraint '" + s.text + "': " + e.what());
    }
    bound = std::min(bound, step_size_bound(s.mu, o.mass, boundary_gradient_norm(s.kind, s.params)));
  }
  if (cs.dim() && *cs.dim() != target.dim) {
    throw ConfigError("--constraint: dimension " + std::to_string(*cs.dim()) + " does not match target dimension " +
                      std::to_string(target.dim));
  }

  HmcConfig cfg;
  cfg.leapfrog = {o.eps, o.L};
  cfg.mass = o.mass;
  cfg.n_samples = o.n;
  cfg.burn_in = o.burn_in;
  if (!o.init.empty()) {
    cfg.init = to_vector(parse_list("--init", o.init, ','));
  } else if (o.target == "nmf") {
    RandomStream init_rng(o.seed, 1000 + o.stream);
    const auto [W, A] = nmf_random_init(model, init_rng);
    cfg.init = nmf_pack(W, A);
  } else {
    cfg.init = Vector::Zero(target.dim);
    if (o.target == "exponential1d") cfg.init[0] = 1.0;
    if (o.target == "gaussian2d" && !specs.empty()) cfg.init = Vector{{0.0, 0.5}};
  }
  if (cfg.init.size() != target.dim) {
    throw ConfigError("--init: expected " + std::to_string(target.dim) + " coordinates");
  }
  if (o.sampler != "gibbs") {
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  std::vector<std::string> warnings;
  if (o.sampler == "rbhmc" && o.eps > bound) {
    std::ostringstream msg;
    msg << "step size " << o.eps << " exceeds step-size bound " << bound;
    warnings.push_back(msg.str());
    std::cerr << "warning: " << msg.str() << '\n';
  }

  const fs::path dir = output_dir(o.out, "sample", o.seed);
  RandomStream rng(o.seed, o.stream);
  Chain chain;
  try {
    if (o.sampler == "rbhmc") {
      chain = rbhmc::rbhmc(target, cs, cfg, rng);
    } else if (o.sampler == "baseline") {
      chain = baseline_hmc(target, cfg, rng);
    } else if (o.sampler == "rhmc") {
      chain = rhmc(target, cfg, rng);
    } else {
      const auto init = nmf_unpack(model, cfg.init);
      chain = gibbs_nmf(model, o.n, rng, init);
    }
  } catch (const UnsupportedGeometry& e) {
    throw ConfigError(std::string("--sampler rhmc: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  io::write_chain_csv(dir / "chain.csv", chain);
  json summary = io::chain_summary(chain);
  summary["config"] = sample_echo(o);
  summary["step_size_bound"] = std::isfinite(bound) ? json(bound) : json(nullptr);
  summary["warnings"] = warnings;
  io::write_json(dir / "summary.json", summary);
  std::cout << "acceptance " << chain.acceptance_rate() << ", " << chain.size() << " samples -> " << dir.string()
            << '\n';
  return 0;
}

// experiment

void print_and_write(ExperimentReport& rep, const fs::path& dir) {
  write_report(rep, dir);
  std::cout << rep.summary.dump(2) << '\n' << "report -> " << dir.string() << '\n';
}

// gen nmf

struct GenOptions {
  int n = 1000;
  double noise = 0.5;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::string from;
  std::string out;
};

int run_gen_nmf(GenOptions o, bool n_set, bool noise_set, bool seed_set, bool stream_set) {
  if (!o.from.empty()) {
    json side;
    try {
      side = io::read_json(o.from);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("--from: ") + e.what());
    }
    // Explicit flags win over the sidecar.
    if (!n_set) o.n = side.at("n").get<int>();
    if (!noise_set) o.noise = side.at("noise_sd").get<double>();
    if (!seed_set) o.seed = side.at("seed").get<std::uint64_t>();
    if (!stream_set) o.stream = side.at("stream").get<std::uint64_t>();
  }
  if (o.n <= 0) throw ConfigError("--n: must be positive");
  if (!(o.noise >= 0.0)) throw ConfigError("--noise: must be non-negative");
  RandomStream rng(o.seed, o.stream);
  const NmfDataset d = gen_nmf_dataset(o.n, o.noise, rng);
  const fs::path dir = output_dir(o.out, "gen-nmf", o.seed);
  io::write_matrix_csv(dir / "X.csv", d.X);
  io::write_matrix_csv(dir / "W_true.csv", d.W_true);
  io::write_matrix_csv(dir / "A_true.csv", d.A_true);
  io::write_json(dir / "dataset.json", {{"generator", "nmf"}, {"n", o.n}, {"noise_sd", o.noise},
                                        {"seed", o.seed}, {"stream", o.stream},
                                        {"rows", d.X.rows()}, {"cols", d.X.cols()}});
  std::cout << d.X.rows() << "x" << d.X.cols() << " dataset -> " << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roll-back HMC sampler toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // parent options such as --threads may follow the subcommand
  app.set_config("--config", "", "TOML/INI file with option values, one [section] per subcommand");
  int threads = 0;
  app.add_option("--threads", threads, "Cap on worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);

  // sample
  SampleOptions so;
  auto* sample = app.add_subcommand("sample", "Draw a chain from one target with one sampler");
  sample->add_option("--target", so.target, "Target density")
      ->check(CLI::IsMember({"gaussian2d", "gaussian", "exponential1d", "norm", "nmf"}));
  sample->add_option("--sampler", so.sampler, "Sampler")->check(CLI::IsMember({"rbhmc", "baseline", "rhmc", "gibbs"}));
  sample->add_option("--constraint", so.constraints, "Boundary name:mu=V[,radius=V,scale=V,offset=V,normal=a/b]")
      ->take_all();
  sample->add_option("--dim", so.dim, "Dimension for gaussian and norm targets");
  sample->add_option("--a", so.a_diag, "Comma-separated diagonal for the norm target");
  sample->add_option("--radius", so.radius, "Ball radius for the norm target");
  sample->add_option("--data", so.data, "Observation matrix CSV for the nmf target");
  sample->add_option("--K", so.K, "Latent dimension for the nmf target");
  sample->add_option("--lambda-w", so.lambda_W, "Exponential prior rate on W");
  sample->add_option("--lambda-a", so.lambda_A, "Exponential prior rate on A");
  sample->add_option("--sigma", so.sigma, "Likelihood noise sd for the nmf target");
  sample->add_option("--nmf-mu", so.nmf_mu, "Barrier steepness of the nmf non-negativity constraint");
  sample->add_option("--eps", so.eps, "Leapfrog step size")->required()->check(CLI::PositiveNumber);
  sample->add_option("--L", so.L, "Leapfrog steps per trajectory")->required()->check(CLI::PositiveNumber);
  sample->add_option("--mass", so.mass, "Particle mass")->check(CLI::PositiveNumber);
  sample->add_option("--n", so.n, "Samples to keep")->check(CLI::PositiveNumber);
  sample->add_option("--burn-in", so.burn_in, "Iterations to discard first")->check(CLI::NonNegativeNumber);
  sample->add_option("--seed", so.seed, "Master seed");
  sample->add_option("--stream", so.stream, "Stream id under the master seed");
  sample->add_option("--init", so.init, "Comma-separated starting point");
  sample->add_option("--out", so.out, "Output directory");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run one of the packaged studies");
  experiment->require_subcommand(1);
  std::string exp_out;
  bool paper_scale = false;
  experiment->add_option("--out", exp_out, "Output directory")->configurable();
  experiment->add_flag("--paper-scale", paper_scale, "Use the full-size presets");

  TruncatedGaussianConfig tg;
  auto* tg_cmd = experiment->add_subcommand("truncated-gaussian", "2D Gaussian under the boundary table rows a-f");
  std::string row = "b";
  tg_cmd->add_option("--boundary", row, "Boundary row a-f")->check(CLI::IsMember({"a", "b", "c", "d", "e", "f"}));
  tg_cmd->add_option("--n", tg.n_samples, "Samples")->check(CLI::PositiveNumber);
  tg_cmd->add_option("--burn-in", tg.burn_in, "Iterations to discard")->check(CLI::NonNegativeNumber);
  tg_cmd->add_option("--mu", tg.mu, "Barrier steepness")->check(CLI::PositiveNumber);
  tg_cmd->add_option("--eps", tg.step_size, "Leapfrog step size")->check(CLI::PositiveNumber);
  tg_cmd->add_option("--L", tg.steps, "Leapfrog steps")->check(CLI::PositiveNumber);
  tg_cmd->add_option("--seed", tg.seed, "Seed");

  WmaeConfig wm;
  auto* wm_cmd = experiment->add_subcommand("wmae", "Norm potential on a ball: RBHMC vs RHMC vs baseline");
  bool literal_ball = false;
  wm_cmd->add_option("--dim", wm.dim, "Dimension")->check(CLI::PositiveNumber);
  wm_cmd->add_option("--rounds", wm.rounds, "Rounds")->check(CLI::PositiveNumber);
  wm_cmd->add_option("--eps", wm.step_size, "Leapfrog step size")->check(CLI::PositiveNumber);
  wm_cmd->add_option("--L", wm.steps, "Leapfrog steps")->check(CLI::PositiveNumber);
  wm_cmd->add_option("--mu", wm.mu, "Barrier steepness")->check(CLI::PositiveNumber);
  wm_cmd->add_option("--radius", wm.radius, "Ball radius")->check(CLI::PositiveNumber);
  wm_cmd->add_option("--iterations", wm.iterations, "Iterations per arm (0 = time budget only)")
      ->check(CLI::NonNegativeNumber);
  wm_cmd->add_option("--time-budget", wm.time_budget_s, "Seconds per arm (0 = none)")->check(CLI::NonNegativeNumber);
  wm_cmd->add_flag("--literal-ball", literal_ball, "Barrier on R^2 - |x|^2 instead of the unit-gradient form");
  wm_cmd->add_option("--seed", wm.seed, "Seed");

  NmfExperimentConfig nm;
  auto* nm_cmd = experiment->add_subcommand("nmf", "Bayesian NMF: RBHMC vs Gibbs");
  nm_cmd->add_option("--n", nm.n, "Images")->check(CLI::PositiveNumber);
  nm_cmd->add_option("--K", nm.K, "Latent dimension")->check(CLI::PositiveNumber);
  nm_cmd->add_option("--iterations", nm.iterations, "Iterations per sampler")->check(CLI::PositiveNumber);
  nm_cmd->add_option("--rounds", nm.rounds, "Rounds")->check(CLI::PositiveNumber);
  nm_cmd->add_option("--eps", nm.step_size, "Leapfrog step size")->check(CLI::PositiveNumber);
  nm_cmd->add_option("--L", nm.steps, "Leapfrog steps")->check(CLI::PositiveNumber);
  nm_cmd->add_option("--mu", nm.mu, "Barrier steepness")->check(CLI::PositiveNumber);
  nm_cmd->add_option("--lambda-w", nm.lambda_W, "Prior rate on W")->check(CLI::PositiveNumber);
  nm_cmd->add_option("--lambda-a", nm.lambda_A, "Prior rate on A")->check(CLI::PositiveNumber);
  nm_cmd->add_option("--sigma", nm.sigma, "Likelihood noise sd")->check(CLI::PositiveNumber);
  nm_cmd->add_option("--noise", nm.noise_sd, "Data noise sd")->check(CLI::NonNegativeNumber);
  nm_cmd->add_option("--burn-in", nm.report_burn_in, "Iterations excluded from the summary")
      ->check(CLI::NonNegativeNumber);
  nm_cmd->add_option("--seed", nm.seed, "Seed");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate synthetic data");
  gen->require_subcommand(1);
  GenOptions go;
  auto* gen_nmf = gen->add_subcommand("nmf", "Binary combinations of four 6x6 base images plus noise");
  auto* g_n = gen_nmf->add_option("--n", go.n, "Images");
  auto* g_noise = gen_nmf->add_option("--noise", go.noise, "Noise sd");
  auto* g_seed = gen_nmf->add_option("--seed", go.seed, "Seed");
  auto* g_stream = gen_nmf->add_option("--stream", go.stream, "Stream id");
  gen_nmf->add_option("--from", go.from, "Regenerate from a dataset.json sidecar");
  gen_nmf->add_option("--out", go.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (threads > 0) omp_set_num_threads(threads);

  try {
    if (*sample) return run_sample(so);
    if (*gen_nmf) return run_gen_nmf(go, g_n->count() > 0, g_noise->count() > 0, g_seed->count() > 0,
                                     g_stream->count() > 0);
    if (*tg_cmd) {
      tg.boundary = row[0];
      if (paper_scale && tg_cmd->count("--n") == 0) tg.n_samples = 100000;
      std::cout << "config " << tg.to_json().dump() << '\n';
      auto rep = exp_truncated_gaussian(tg);
      print_and_write(rep, output_dir(exp_out, "truncated-gaussian", tg.seed));
      return 0;
    }
    if (*wm_cmd) {
      wm.unit_gradient_ball = !literal_ball;
      if (paper_scale) {
        if (wm_cmd->count("--rounds") == 0) wm.rounds = 10;
        if (wm_cmd->count("--time-budget") == 0) wm.time_budget_s = 60.0;
        if (wm_cmd->count("--iterations") == 0) wm.iterations = 0;
      }
      if (wm.iterations == 0 && !(wm.time_budget_s > 0.0)) {
        throw ConfigError("--iterations: 0 needs a --time-budget");
      }
      std::cout << "config " << wm.to_json().dump() << '\n';
      auto rep = exp_wmae(wm);
      print_and_write(rep, output_dir(exp_out, "wmae", wm.seed));
      return 0;
    }
    if (*nm_cmd) {
      if (paper_scale) {
        if (nm_cmd->count("--n") == 0) nm.n = 1000;
        if (nm_cmd->count("--iterations") == 0) nm.iterations = 2000;
        if (nm_cmd->count("--rounds") == 0) nm.rounds = 10;
      }
      if (nm.report_burn_in >= nm.iterations) throw ConfigError("--burn-in: must be below --iterations");
      std::cout << "config " << nm.to_json().dump() << '\n';
      auto rep = exp_nmf(nm);
      print_and_write(rep, output_dir(exp_out, "nmf", nm.seed));
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}
