#include "vcmass/integrate.hpp"

#include <cmath>

#include "vcmass/errors.hpp"

namespace vcmass {

IntegratorState make_state(const SecondOrderSystem& system, double t0,
                           const Eigen::VectorXd& u0, const Eigen::VectorXd& v0) {
  IntegratorState state;
  state.t = t0;
  state.u = u0;
  state.v = v0;
  state.a = system.acceleration(t0, u0);
  return state;
}

void step_central_difference(IntegratorState& state, double dt, const SecondOrderSystem& system) {
  const Eigen::VectorXd v_half = state.v + 0.5 * dt * state.a;
  state.u += dt * v_half;
  state.t += dt;
  state.a = system.acceleration(state.t, state.u);
  state.v = v_half + 0.5 * dt * state.a;
}

void step_rk4(IntegratorState& state, double dt, const SecondOrderSystem& system) {
  const double t = state.t;
  // Stage slopes for y = (u, v): k = (v, a(t, u)). The cached acceleration is
  // exactly the first stage.
  const Eigen::VectorXd& k1u = state.v;
  const Eigen::VectorXd& k1v = state.a;
  const Eigen::VectorXd k2u = state.v + 0.5 * dt * k1v;
  const Eigen::VectorXd k2v = system.acceleration(t + 0.5 * dt, state.u + 0.5 * dt * k1u);
  const Eigen::VectorXd k3u = state.v + 0.5 * dt * k2v;
  const Eigen::VectorXd k3v = system.acceleration(t + 0.5 * dt, state.u + 0.5 * dt * k2u);
  const Eigen::VectorXd k4u = state.v + dt * k3v;
  const Eigen::VectorXd k4v = system.acceleration(t + dt, state.u + dt * k3u);

  state.u += dt / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
  state.v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  state.t = t + dt;
  state.a = system.acceleration(state.t, state.u);
}

TimeHistory integrate(const SecondOrderSystem& system, IntegratorState state, double dt,
                      long n_steps, StepFunction step, int cadence,
                      const ProbeFunction& probe) {
  if (cadence < 1) cadence = 1;
  TimeHistory history;
  history.dt = dt;

  const double scale0 = std::max(state.u.norm() + dt * state.v.norm(), 1e-30);
  const auto record = [&] {
    history.times.push_back(state.t);
    history.snapshots.push_back(state.u);
    if (probe) probe(state, history.probes);
  };
  record();

  for (long n = 0; n < n_steps; ++n) {
    step(state, dt, system);
    const double norm = state.u.norm();
    if (!std::isfinite(norm) || norm > 1e6 * scale0)
      throw InstabilityError("time integration diverged", n + 1);
    if ((n + 1) % cadence == 0 || n + 1 == n_steps) record();
  }
  return history;
}

}  // namespace vcmass
