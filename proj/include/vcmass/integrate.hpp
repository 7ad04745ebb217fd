#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace vcmass {

/// Second-order system M ü = f(t, u) presented through its resolved
/// acceleration. The callable owns whatever factorization of M it needs, so
/// linear problems factorize once and nonlinear ones plug in their internal
/// force without changing the steppers.
struct SecondOrderSystem {
  int size = 0;
  std::function<Eigen::VectorXd(double t, const Eigen::VectorXd& u)> acceleration;
};

/// Integrator state. `a` caches acceleration(t, u); both steppers keep it
/// current so a step costs one acceleration evaluation (central difference)
/// or four (RK4).
struct IntegratorState {
  double t = 0.0;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
  Eigen::VectorXd a;
};

IntegratorState make_state(const SecondOrderSystem& system, double t0,
                           const Eigen::VectorXd& u0, const Eigen::VectorXd& v0);

/// Central difference step in velocity form (kick-drift-kick). Produces the
/// same displacement sequence as the classic three-level recursion
/// u_{n+1} = 2u_n - u_{n-1} + dt² a_n, with the stability bound dt < 2/ω_max.
void step_central_difference(IntegratorState& state, double dt, const SecondOrderSystem& system);

/// Classic four-stage Runge-Kutta step on the first-order form (u, v).
void step_rk4(IntegratorState& state, double dt, const SecondOrderSystem& system);

/// Sampled trajectory. Snapshots keep full coefficient vectors every
/// `cadence` steps (and always the final state); probes are named scalar
/// channels sampled at the same instants.
struct TimeHistory {
  double dt = 0.0;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> snapshots;
  std::map<std::string, std::vector<double>> probes;
};

using StepFunction = void (*)(IntegratorState&, double, const SecondOrderSystem&);
using ProbeFunction =
    std::function<void(const IntegratorState&, std::map<std::string, std::vector<double>>&)>;

/// Drives `n_steps` fixed-size steps, recording snapshots and probes every
/// `cadence` steps. Divergence (non-finite values or displacement growth
/// beyond 1e6 times the initial scale) raises InstabilityError with the
/// offending step index.
TimeHistory integrate(const SecondOrderSystem& system, IntegratorState state, double dt,
                      long n_steps, StepFunction step, int cadence = 1,
                      const ProbeFunction& probe = nullptr);

}  // namespace vcmass
