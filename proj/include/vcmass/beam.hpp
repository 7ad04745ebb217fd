#pragma once

#include <functional>
#include <vector>

#include "vcmass/hyperelastic.hpp"
#include "vcmass/integrate.hpp"
#include "vcmass/mesh.hpp"

namespace vcmass {

/// Cantilever benchmark: a rectangular prism with one long edge chamfered off
/// (the asymmetry that excites twist), clamped at x = 0, released from a
/// circular-arc initial displacement.
struct BeamConfig {
  double length = 0.2;
  double width = 0.02;
  double height = 0.01;
  double chamfer = 0.005;  // 45-degree cut at the (y = width, z = height) edge
  double radius = 0.15;    // arc radius of the initial displacement

  HyperelasticMaterial material = HyperelasticMaterial::from_youngs(2700.0, 73e9, 0.33);

  int nx = 10;
  int ny = 4;
  int nz = 2;
  int degree = 1;  // hex elements support 1 and 2

  double c = 0.0;
  double final_time = 0.01;
  // Δt = safety · t_crit of the linearized system. The tangent stiffness
  // grows as the released beam swings through tension, so the margin must
  // absorb more than roundoff: 0.9 diverges mid-run on the default mesh.
  double safety = 0.5;
  int cadence = 1;      // probe sampling stride in steps

  /// Initial displacement field; defaults to the circular arc of `radius`.
  /// Must vanish on the clamped face.
  std::function<Eigen::Vector3d(const Eigen::Vector3d&)> initial_displacement;
};

/// Structured hex mesh of the chamfered prism. Columns under the chamfer
/// plane are squashed vertically, so the top surface follows the cut exactly
/// when width - chamfer lies on a grid line. The x = 0 face is tagged
/// Dirichlet, everything else Neumann (traction-free).
Mesh generate_beam_mesh(const BeamConfig& config);

/// Arc initial displacement: bends the beam into a circle of radius R in the
/// y = 0 plane with no stretch of the z = 0 fiber.
Eigen::Vector3d beam_initial_displacement(const Eigen::Vector3d& x, double R);

/// Outcome of one explicit run. Probe channels: ux, uy, uz (tip corner
/// displacement), twist (tip cross-section rotation about the beam axis) and
/// energy (kinetic + strain).
struct BeamRun {
  double lambda_max0 = 0.0;  // linearized eigenvalue without scaling
  double lambda_max = 0.0;   // with the configured c
  double tcrit0 = 0.0;
  double tcrit = 0.0;
  double dt = 0.0;
  long n_steps = 0;
  TimeHistory history;
};

/// Central-difference free-vibration run with the constant scaled mass
/// factorized once. Instability propagates as InstabilityError.
BeamRun run_beam(const BeamConfig& config);

struct BeamSweepRow {
  double c = 0.0;
  double tcrit = 0.0;
  double ratio = 1.0;  // tcrit(c) / tcrit(0)
};

/// Critical-time-step gain of the linearized eigenproblem as a function of
/// c, on the configured mesh and degree. The stiffness is assembled once.
std::vector<BeamSweepRow> beam_tcrit_sweep(const BeamConfig& config,
                                           const std::vector<double>& c_values);

}  // namespace vcmass
