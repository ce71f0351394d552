#ifndef RBHMC_INTEGRATOR_HPP
#define RBHMC_INTEGRATOR_HPP

#include "rbhmc/common.hpp"

#include <string>
#include <vector>

namespace rbhmc {

struct PhaseState {
  Vector x;
  Vector p;
  double mass = 1.0;
};

struct LeapfrogParams {
  double step_size = 0.01;
  int steps = 1;

  void validate() const;
};

double kinetic_energy(const PhaseState& s);

/// |p|^2 / (2m) + U(x). A non-finite U propagates into the result.
double hamiltonian(const PhaseState& s, double potential_value);
double hamiltonian(const PhaseState& s, const ScalarField& potential);

/// Standard leapfrog: half momentum step, then `steps` alternations of full
/// position and momentum steps, the last momentum step being a half step.
/// Throws DivergedTrajectory on a non-finite state.
PhaseState leapfrog(PhaseState s, const VectorField& grad_potential, const LeapfrogParams& params);

/// Leapfrog with a pluggable position update. `drift(x, p, dt)` moves x for
/// time dt with momentum p (and may modify p, e.g. on reflection); returning
/// false aborts the trajectory, in which case the function returns false and
/// `s` holds the partial state.
template <typename Drift>
bool leapfrog_with(PhaseState& s, const VectorField& grad_potential, const LeapfrogParams& params,
                   Drift&& drift) {
  const double eps = params.step_size;
  s.p -= 0.5 * eps * grad_potential(s.x);
  for (int step = 0; step < params.steps; ++step) {
    if (!drift(s.x, s.p, eps)) return false;
    const Vector g = grad_potential(s.x);
    const double scale = (step + 1 == params.steps) ? 0.5 * eps : eps;
    s.p -= scale * g;
    if (!s.x.allFinite() || !s.p.allFinite()) {
      throw DivergedTrajectory(step, "leapfrog diverged at step " + std::to_string(step));
    }
  }
  return true;
}

/// Synchronized (x, p) after every step, starting with the initial state.
/// Uses kick-drift-kick per step, which is algebraically the same trajectory.
std::vector<PhaseState> leapfrog_trace(PhaseState s, const VectorField& grad_potential,
                                       const LeapfrogParams& params);

/// Order-of-magnitude upper bound sqrt(m) / (|grad g| mu) on the step size
/// for which a particle still resolves the boundary slope.
double step_size_bound(double mu, double mass, double grad_g_sup);

}  // namespace rbhmc

#endif
