#include "rbhmc/integrator.hpp"

#include <cmath>
#include <stdexcept>

namespace rbhmc {

void LeapfrogParams::validate() const {
  if (!(step_size > 0.0) || !std::isfinite(step_size)) {
    throw std::invalid_argument("leapfrog: step size must be positive");
  }
  if (steps < 1) throw std::invalid_argument("leapfrog: steps must be >= 1");
}

double kinetic_energy(const PhaseState& s) { return s.p.squaredNorm() / (2.0 * s.mass); }

double hamiltonian(const PhaseState& s, double potential_value) {
  return kinetic_energy(s) + potential_value;
}

double hamiltonian(const PhaseState& s, const ScalarField& potential) {
  return hamiltonian(s, potential(s.x));
}

PhaseState leapfrog(PhaseState s, const VectorField& grad_potential, const LeapfrogParams& params) {
  params.validate();
  if (s.x.size() != s.p.size()) throw std::invalid_argument("leapfrog: x and p differ in dimension");
  const double inv_mass = 1.0 / s.mass;
  leapfrog_with(s, grad_potential, params, [inv_mass](Vector& x, const Vector& p, double dt) {
    x += (dt * inv_mass) * p;
    return true;
  });
  return s;
}

std::vector<PhaseState> leapfrog_trace(PhaseState s, const VectorField& grad_potential,
                                       const LeapfrogParams& params) {
  params.validate();
  const double eps = params.step_size;
  std::vector<PhaseState> out;
  out.reserve(static_cast<std::size_t>(params.steps) + 1);
  out.push_back(s);
  Vector g = grad_potential(s.x);
  for (int step = 0; step < params.steps; ++step) {
    s.p -= 0.5 * eps * g;
    s.x += (eps / s.mass) * s.p;
    g = grad_potential(s.x);
    s.p -= 0.5 * eps * g;
    if (!s.x.allFinite() || !s.p.allFinite()) {
      throw DivergedTrajectory(step, "leapfrog diverged at step " + std::to_string(step));
    }
    out.push_back(s);
  }
  return out;
}

double step_size_bound(double mu, double mass, double grad_g_sup) {
  return std::sqrt(mass) / (grad_g_sup * mu);
}

}  // namespace rbhmc
