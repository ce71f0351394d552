#ifndef RBHMC_SAMPLERS_HPP
#define RBHMC_SAMPLERS_HPP

#include "rbhmc/constraints.hpp"
#include "rbhmc/integrator.hpp"
#include "rbhmc/random.hpp"
#include "rbhmc/targets.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace rbhmc {

struct HmcConfig {
  LeapfrogParams leapfrog;
  double mass = 1.0;
  int n_samples = 1000;
  int burn_in = 0;
  Vector init;

  void validate() const;
};

/// Retained iterations of a run. `energies[i]` is the Hamiltonian at the start
/// of iteration i (fresh momentum, current position).
struct Chain {
  std::vector<Vector> samples;
  std::vector<std::uint8_t> accepted;
  std::vector<double> energies;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  std::size_t size() const { return samples.size(); }
  double acceptance_rate() const;
};

/// True with probability min(1, exp(-delta_h)); non-finite delta_h rejects.
/// Always consumes exactly one uniform draw.
bool metropolis_accept(double delta_h, RandomStream& rng);

struct Transition {
  bool accepted = false;
  double energy = 0.0;   // H at the start of the trajectory
  double delta_h = 0.0;  // +inf for aborted or diverged trajectories
};

/// Energy jump above which a trajectory counts as diverged.
inline constexpr double kDivergenceThreshold = 1000.0;
/// Reflections allowed within a single position update of the reflective sampler.
inline constexpr int kMaxReflectionsPerStep = 32;

/// One HMC Markov kernel. Subclasses differ only in the potential they
/// integrate and in how a position update treats the truncation boundary.
class HmcKernel {
 public:
  HmcKernel(double mass, LeapfrogParams leapfrog);
  virtual ~HmcKernel() = default;

  HmcKernel(const HmcKernel&) = delete;
  HmcKernel& operator=(const HmcKernel&) = delete;

  Transition step(RandomStream& rng);

  const Vector& position() const { return x_; }

 protected:
  /// Must be called by the subclass constructor.
  void reset(const Vector& init);

  virtual double potential(const Vector& x) const = 0;
  /// Runs the trajectory in place. Returns false to reject it outright.
  virtual bool integrate(PhaseState& s) const = 0;

  double mass_;
  LeapfrogParams leapfrog_;

 private:
  Vector x_;
  double u_ = 0.0;
};

/// Roll-back HMC: leapfrog on U + sum of boundary potentials. Leaving the
/// ROI never rejects; the barrier turns the particle around.
class RollbackHmc final : public HmcKernel {
 public:
  RollbackHmc(const Target& target, const ConstraintSet& constraints, const HmcConfig& cfg);

 protected:
  double potential(const Vector& x) const override;
  bool integrate(PhaseState& s) const override;

 private:
  const Target& target_;
  const ConstraintSet& constraints_;
  VectorField grad_;
};

/// HMC that aborts and rejects any trajectory whose position leaves the hard ROI.
class RejectingHmc final : public HmcKernel {
 public:
  RejectingHmc(const Target& target, const HmcConfig& cfg);

 protected:
  double potential(const Vector& x) const override;
  bool integrate(PhaseState& s) const override;

 private:
  const Target& target_;
};

/// HMC that reflects the momentum off the hard ROI boundary at the exact
/// crossing point of every position update.
class ReflectiveHmc final : public HmcKernel {
 public:
  ReflectiveHmc(const Target& target, const HmcConfig& cfg);

 protected:
  double potential(const Vector& x) const override;
  bool integrate(PhaseState& s) const override;

 private:
  const Target& target_;
};

/// p with its component along `unit_normal` negated.
Vector reflect_momentum(const Vector& p, const Vector& unit_normal);

/// Smallest t >= 0 with |x + t v| = radius, for x inside the ball.
std::optional<double> ball_exit_time(const Vector& x, const Vector& v, double radius);

/// Smallest t >= 0 with normal . (x + t v) = offset, if v points out of the half-space.
std::optional<double> halfspace_exit_time(const Vector& x, const Vector& v, const Vector& normal,
                                          double offset);

/// Moves x for time dt at velocity p / mass inside `roi`, reflecting at the
/// boundary. Returns false if the reflection cap was hit.
bool reflective_drift(const HardRoi& roi, Vector& x, Vector& p, double mass, double dt);

/// Runs burn_in + n_samples transitions of `kernel`, keeping the last n_samples.
Chain run_chain(HmcKernel& kernel, const HmcConfig& cfg, RandomStream& rng);

Chain rbhmc(const Target& target, const ConstraintSet& constraints, const HmcConfig& cfg,
            RandomStream& rng);
Chain baseline_hmc(const Target& target, const HmcConfig& cfg, RandomStream& rng);
Chain rhmc(const Target& target, const HmcConfig& cfg, RandomStream& rng);

/// Full conditional of one factor entry under the exact (hard-truncated)
/// NMF model: Normal(mean, sd^2) on [0, inf), or Exp(rate) when the
/// entry has no likelihood contribution.
struct EntryConditional {
  double mean = 0.0;
  double sd = 0.0;
  bool prior_only = false;
  double rate = 0.0;
};

/// Systematic-scan Gibbs sampler for the NMF model: every entry of W in
/// row-major order, then every entry of A.
class GibbsNmf {
 public:
  GibbsNmf(const NmfModel& model, RowMatrix W, RowMatrix A);

  void sweep(RandomStream& rng);

  EntryConditional w_conditional(Eigen::Index i, Eigen::Index k) const;
  EntryConditional a_conditional(Eigen::Index k, Eigen::Index j) const;

  const RowMatrix& W() const { return W_; }
  const RowMatrix& A() const { return A_; }

 private:
  void refresh_residual();
  static double draw(const EntryConditional& c, RandomStream& rng);

  const NmfModel& model_;
  RowMatrix W_;
  RowMatrix A_;
  RowMatrix residual_;  // X - W A
};

/// Random starting factors, entries uniform on [0, 1).
std::pair<RowMatrix, RowMatrix> nmf_random_init(const NmfModel& model, RandomStream& rng);

/// Gibbs chain over the packed (W, A) state. Every iteration is accepted;
/// `energies` holds the approximate potential of each sample.
Chain gibbs_nmf(const NmfModel& model, int n_iters, RandomStream& rng,
                std::optional<std::pair<RowMatrix, RowMatrix>> init = std::nullopt);

}  // namespace rbhmc

#endif
