#include "rbhmc/samplers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rbhmc {

void HmcConfig::validate() const {
  leapfrog.validate();
  if (!(mass > 0.0) || !std::isfinite(mass)) throw std::invalid_argument("hmc: mass must be positive");
  if (n_samples < 1) throw std::invalid_argument("hmc: n_samples must be >= 1");
  if (burn_in < 0) throw std::invalid_argument("hmc: burn_in must be >= 0");
  if (init.size() == 0 || !init.allFinite()) throw std::invalid_argument("hmc: init must be finite and non-empty");
}

double Chain::acceptance_rate() const {
  if (accepted.empty()) return 0.0;
  std::size_t n = 0;
  for (auto a : accepted) n += a;
  return static_cast<double>(n) / static_cast<double>(accepted.size());
}

bool metropolis_accept(double delta_h, RandomStream& rng) {
  const double u = rng.uniform();
  if (std::isnan(delta_h)) return false;
  return u < std::exp(-delta_h);
}

HmcKernel::HmcKernel(double mass, LeapfrogParams leapfrog) : mass_(mass), leapfrog_(leapfrog) {
  leapfrog_.validate();
  if (!(mass_ > 0.0)) throw std::invalid_argument("hmc: mass must be positive");
}

void HmcKernel::reset(const Vector& init) {
  x_ = init;
  u_ = potential(x_);
  if (!std::isfinite(u_)) throw std::invalid_argument("hmc: potential at init is not finite");
}

Transition HmcKernel::step(RandomStream& rng) {
  PhaseState s{x_, Vector(x_.size()), mass_};
  const double sd = std::sqrt(mass_);
  for (Eigen::Index d = 0; d < s.p.size(); ++d) s.p[d] = sd * rng.normal();

  Transition t;
  t.energy = hamiltonian(s, u_);
  t.delta_h = std::numeric_limits<double>::infinity();
  double u_new = 0.0;
  try {
    if (integrate(s)) {
      u_new = potential(s.x);
      const double dh = hamiltonian(s, u_new) - t.energy;
      if (std::isfinite(dh) && dh <= kDivergenceThreshold) t.delta_h = dh;
    }
  } catch (const DivergedTrajectory&) {
  }
  t.accepted = metropolis_accept(t.delta_h, rng);
  if (t.accepted) {
    x_ = std::move(s.x);
    u_ = u_new;
  }
  return t;
}

// Roll-back

RollbackHmc::RollbackHmc(const Target& target, const ConstraintSet& constraints, const HmcConfig& cfg)
    : HmcKernel(cfg.mass, cfg.leapfrog), target_(target), constraints_(constraints) {
  cfg.validate();
  if (cfg.init.size() != target.dim) throw std::invalid_argument("rbhmc: init has wrong dimension");
  if (constraints_.empty()) {
    grad_ = target_.grad_potential;
  } else {
    grad_ = [this](const Vector& x) -> Vector {
      return target_.grad_potential(x) + constraints_.gradient(x);
    };
  }
  reset(cfg.init);
}

double RollbackHmc::potential(const Vector& x) const {
  return target_.potential(x) + constraints_.energy(x);
}

bool RollbackHmc::integrate(PhaseState& s) const {
  const double inv_mass = 1.0 / s.mass;
  return leapfrog_with(s, grad_, leapfrog_, [inv_mass](Vector& x, const Vector& p, double dt) {
    x += (dt * inv_mass) * p;
    return true;
  });
}

// Reject on exit

RejectingHmc::RejectingHmc(const Target& target, const HmcConfig& cfg)
    : HmcKernel(cfg.mass, cfg.leapfrog), target_(target) {
  cfg.validate();
  if (!target.hard_roi) throw std::invalid_argument("baseline_hmc: target has no hard ROI");
  if (cfg.init.size() != target.dim) throw std::invalid_argument("baseline_hmc: init has wrong dimension");
  if (!target.in_roi(cfg.init)) throw std::invalid_argument("baseline_hmc: init outside the ROI");
  reset(cfg.init);
}

double RejectingHmc::potential(const Vector& x) const { return target_.restricted_potential(x); }

bool RejectingHmc::integrate(PhaseState& s) const {
  const double inv_mass = 1.0 / s.mass;
  return leapfrog_with(s, target_.grad_potential, leapfrog_,
                       [this, inv_mass](Vector& x, const Vector& p, double dt) {
                         x += (dt * inv_mass) * p;
                         return target_.in_roi(x);
                       });
}

// Reflective

Vector reflect_momentum(const Vector& p, const Vector& unit_normal) {
  return p - (2.0 * p.dot(unit_normal)) * unit_normal;
}

std::optional<double> ball_exit_time(const Vector& x, const Vector& v, double radius) {
  const double a = v.squaredNorm();
  if (a == 0.0) return std::nullopt;
  const double b = x.dot(v);
  const double c = x.squaredNorm() - radius * radius;
  const double disc = std::max(b * b - a * c, 0.0);
  const double root = std::sqrt(disc);
  // Forward root of a t^2 + 2 b t + c = 0, in cancellation-free form.
  const double t = b > 0.0 ? -c / (b + root) : (root - b) / a;
  return std::max(t, 0.0);
}

std::optional<double> halfspace_exit_time(const Vector& x, const Vector& v, const Vector& normal,
                                          double offset) {
  const double rate = normal.dot(v);
  if (!(rate < 0.0)) return std::nullopt;
  return std::max((offset - normal.dot(x)) / rate, 0.0);
}

bool reflective_drift(const HardRoi& roi, Vector& x, Vector& p, double mass, double dt) {
  double remaining = dt;
  for (int bounce = 0; bounce <= kMaxReflectionsPerStep; ++bounce) {
    const Vector v = p / mass;
    std::optional<double> hit;
    Vector normal;
    if (const auto* ball = std::get_if<BallRoi>(&roi)) {
      hit = ball_exit_time(x, v, ball->radius);
      if (hit && *hit < remaining) normal = (x + *hit * v).normalized();
    } else if (const auto* hs = std::get_if<HalfspaceRoi>(&roi)) {
      for (std::size_t i = 0; i < hs->normals.size(); ++i) {
        auto t = halfspace_exit_time(x, v, hs->normals[i], hs->offsets[i]);
        if (t && (!hit || *t < *hit)) {
          hit = t;
          normal = hs->normals[i].normalized();
        }
      }
    } else {
      throw UnsupportedGeometry("reflective sampler needs a ball or half-space ROI");
    }
    if (!hit || *hit >= remaining) {
      x += remaining * v;
      return true;
    }
    if (bounce == kMaxReflectionsPerStep) return false;
    x += *hit * v;
    p = reflect_momentum(p, normal);
    remaining -= *hit;
  }
  return false;
}

ReflectiveHmc::ReflectiveHmc(const Target& target, const HmcConfig& cfg)
    : HmcKernel(cfg.mass, cfg.leapfrog), target_(target) {
  cfg.validate();
  if (!target.hard_roi || std::holds_alternative<CustomRoi>(*target.hard_roi)) {
    throw UnsupportedGeometry("rhmc: target ROI must be a ball or an intersection of half-spaces");
  }
  if (cfg.init.size() != target.dim) throw std::invalid_argument("rhmc: init has wrong dimension");
  if (!target.in_roi(cfg.init)) throw std::invalid_argument("rhmc: init outside the ROI");
  reset(cfg.init);
}

// Positions never leave the ROI, so the smooth potential is used directly;
// boundary points may sit a rounding error outside it.
double ReflectiveHmc::potential(const Vector& x) const { return target_.potential(x); }

bool ReflectiveHmc::integrate(PhaseState& s) const {
  const HardRoi& roi = *target_.hard_roi;
  return leapfrog_with(s, target_.grad_potential, leapfrog_,
                       [&roi, mass = s.mass](Vector& x, Vector& p, double dt) {
                         return reflective_drift(roi, x, p, mass, dt);
                       });
}

Chain run_chain(HmcKernel& kernel, const HmcConfig& cfg, RandomStream& rng) {
  Chain chain;
  chain.seed = rng.seed();
  chain.stream = rng.stream();
  chain.samples.reserve(static_cast<std::size_t>(cfg.n_samples));
  chain.accepted.reserve(static_cast<std::size_t>(cfg.n_samples));
  chain.energies.reserve(static_cast<std::size_t>(cfg.n_samples));
  const int total = cfg.burn_in + cfg.n_samples;
  for (int it = 0; it < total; ++it) {
    const Transition t = kernel.step(rng);
    if (it < cfg.burn_in) continue;
    chain.samples.push_back(kernel.position());
    chain.accepted.push_back(t.accepted ? 1 : 0);
    chain.energies.push_back(t.energy);
  }
  return chain;
}

Chain rbhmc(const Target& target, const ConstraintSet& constraints, const HmcConfig& cfg,
            RandomStream& rng) {
  RollbackHmc kernel(target, constraints, cfg);
  return run_chain(kernel, cfg, rng);
}

Chain baseline_hmc(const Target& target, const HmcConfig& cfg, RandomStream& rng) {
  RejectingHmc kernel(target, cfg);
  return run_chain(kernel, cfg, rng);
}

Chain rhmc(const Target& target, const HmcConfig& cfg, RandomStream& rng) {
  ReflectiveHmc kernel(target, cfg);
  return run_chain(kernel, cfg, rng);
}

// Gibbs for NMF

GibbsNmf::GibbsNmf(const NmfModel& model, RowMatrix W, RowMatrix A)
    : model_(model), W_(std::move(W)), A_(std::move(A)) {
  model_.validate();
  if (W_.rows() != model.rows() || W_.cols() != model.K || A_.rows() != model.K ||
      A_.cols() != model.cols()) {
    throw std::invalid_argument("gibbs_nmf: factor shapes do not match the model");
  }
  if ((W_.array() < 0.0).any() || (A_.array() < 0.0).any()) {
    throw std::invalid_argument("gibbs_nmf: initial factors must be non-negative");
  }
  refresh_residual();
}

void GibbsNmf::refresh_residual() { residual_ = model_.X - W_ * A_; }

EntryConditional GibbsNmf::w_conditional(Eigen::Index i, Eigen::Index k) const {
  const double var = model_.sigma * model_.sigma;
  double ss = 0.0;
  double cross = 0.0;
  const double w = W_(i, k);
  for (Eigen::Index j = 0; j < A_.cols(); ++j) {
    const double a = A_(k, j);
    ss += a * a;
    cross += a * (residual_(i, j) + w * a);
  }
  EntryConditional c;
  if (ss == 0.0) {
    c.prior_only = true;
    c.rate = model_.lambda_W;
    return c;
  }
  const double s2 = var / ss;
  c.mean = s2 * (cross - var * model_.lambda_W) / var;
  c.sd = std::sqrt(s2);
  return c;
}

EntryConditional GibbsNmf::a_conditional(Eigen::Index k, Eigen::Index j) const {
  const double var = model_.sigma * model_.sigma;
  double ss = 0.0;
  double cross = 0.0;
  const double a = A_(k, j);
  for (Eigen::Index i = 0; i < W_.rows(); ++i) {
    const double w = W_(i, k);
    ss += w * w;
    cross += w * (residual_(i, j) + w * a);
  }
  EntryConditional c;
  if (ss == 0.0) {
    c.prior_only = true;
    c.rate = model_.lambda_A;
    return c;
  }
  const double s2 = var / ss;
  c.mean = s2 * (cross - var * model_.lambda_A) / var;
  c.sd = std::sqrt(s2);
  return c;
}

double GibbsNmf::draw(const EntryConditional& c, RandomStream& rng) {
  if (c.prior_only) return exponential(c.rate, rng);
  return truncated_normal_lower(c.mean, c.sd, 0.0, rng);
}

void GibbsNmf::sweep(RandomStream& rng) {
  for (Eigen::Index i = 0; i < W_.rows(); ++i) {
    for (Eigen::Index k = 0; k < W_.cols(); ++k) {
      const double old = W_(i, k);
      const double w = draw(w_conditional(i, k), rng);
      W_(i, k) = w;
      residual_.row(i) -= (w - old) * A_.row(k);
    }
  }
  for (Eigen::Index k = 0; k < A_.rows(); ++k) {
    for (Eigen::Index j = 0; j < A_.cols(); ++j) {
      const double old = A_(k, j);
      const double a = draw(a_conditional(k, j), rng);
      A_(k, j) = a;
      residual_.col(j) -= (a - old) * W_.col(k);
    }
  }
  refresh_residual();
}

std::pair<RowMatrix, RowMatrix> nmf_random_init(const NmfModel& model, RandomStream& rng) {
  RowMatrix W(model.rows(), model.K);
  RowMatrix A(model.K, model.cols());
  for (Eigen::Index i = 0; i < W.size(); ++i) W.data()[i] = rng.uniform();
  for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = rng.uniform();
  return {std::move(W), std::move(A)};
}

Chain gibbs_nmf(const NmfModel& model, int n_iters, RandomStream& rng,
                std::optional<std::pair<RowMatrix, RowMatrix>> init) {
  if (n_iters < 1) throw std::invalid_argument("gibbs_nmf: n_iters must be >= 1");
  if (!model.X.allFinite()) throw std::invalid_argument("gibbs_nmf: X must be finite");
  auto [W0, A0] = init ? std::move(*init) : nmf_random_init(model, rng);
  GibbsNmf sampler(model, std::move(W0), std::move(A0));
  Chain chain;
  chain.seed = rng.seed();
  chain.stream = rng.stream();
  for (int it = 0; it < n_iters; ++it) {
    sampler.sweep(rng);
    chain.samples.push_back(nmf_pack(sampler.W(), sampler.A()));
    chain.accepted.push_back(1);
    chain.energies.push_back(nmf_potential(model, sampler.W(), sampler.A()));
  }
  return chain;
}

}  // namespace rbhmc
