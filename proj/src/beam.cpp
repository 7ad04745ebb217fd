#include "vcmass/beam.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SparseCholesky>

#include "vcmass/errors.hpp"
#include "vcmass/wave.hpp"

namespace vcmass {

namespace {

void validate_geometry(const BeamConfig& config) {
  if (config.length <= 0 || config.width <= 0 || config.height <= 0)
    throw std::invalid_argument("beam: dimensions must be positive");
  if (config.chamfer < 0 || config.chamfer >= std::min(config.width, config.height))
    throw std::invalid_argument("beam: chamfer must be in [0, min(width, height))");
  if (config.nx < 1 || config.ny < 1 || config.nz < 1)
    throw std::invalid_argument("beam: need at least one element per direction");
  if (config.degree != 1 && config.degree != 2)
    throw std::invalid_argument("beam: hex elements support degree 1 and 2");
}

// Scalar DOF whose coordinates match `target` exactly (to a mesh-size
// tolerance). The probe corners lie on the unchamfered z = 0 plane, so they
// exist at every resolution.
int locate_scalar_dof(const DiscreteSpace& space, const Eigen::Vector3d& target, double tol) {
  const Eigen::MatrixXd& coords = space.dof_coords();
  for (int s = 0; s < space.num_scalar_dofs(); ++s)
    if ((coords.row(s).transpose() - target).norm() < tol) return s;
  throw std::logic_error("beam probe node not found");
}

}  // namespace

Mesh generate_beam_mesh(const BeamConfig& config) {
  validate_geometry(config);
  const int nx = config.nx, ny = config.ny, nz = config.nz;
  const double W = config.width, H = config.height, ch = config.chamfer;

  Mesh mesh;
  mesh.dim = 3;
  mesh.nodes.resize((nx + 1) * (ny + 1) * (nz + 1), 3);
  const auto id = [&](int i, int j, int k) { return i + (nx + 1) * (j + (ny + 1) * k); };
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i) {
        const double x = config.length * i / nx;
        const double y = W * j / ny;
        const double z = H * k / nz;
        // Columns under the cut are squashed so the top surface follows the
        // 45-degree chamfer plane.
        const double ztop = (y > W - ch) ? H - (y - (W - ch)) : H;
        mesh.nodes.row(id(i, j, k)) << x, y, z * ztop / H;
      }
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        MeshElement e;
        e.kind = ElementKind::hex;
        e.nodes = {id(i, j, k),         id(i + 1, j, k),         id(i + 1, j + 1, k),
                   id(i, j + 1, k),     id(i, j, k + 1),         id(i + 1, j, k + 1),
                   id(i + 1, j + 1, k + 1), id(i, j + 1, k + 1)};
        mesh.elements.push_back(e);
      }
  const double xtol = 1e-9 * config.length;
  mesh.build_facets([&](const Eigen::VectorXd& x) {
    return x[0] < xtol ? BoundaryTag::dirichlet : BoundaryTag::neumann;
  });
  return mesh;
}

Eigen::Vector3d beam_initial_displacement(const Eigen::Vector3d& x, double R) {
  if (R <= 0) throw std::invalid_argument("beam_initial_displacement: radius must be positive");
  const double s = x[0] / R;
  return {(R - x[2]) * std::sin(s) - x[0], 0.0, R - (R - x[2]) * std::cos(s) - x[2]};
}

BeamRun run_beam(const BeamConfig& config) {
  validate_geometry(config);
  if (config.final_time <= 0 || config.safety <= 0 || config.cadence < 1)
    throw std::invalid_argument("run_beam: invalid stepping parameters");
  auto ic = config.initial_displacement;
  if (!ic) {
    if (config.radius <= config.length / std::numbers::pi)
      throw std::invalid_argument("run_beam: radius must exceed length/pi");
    ic = [R = config.radius](const Eigen::Vector3d& x) {
      return beam_initial_displacement(x, R);
    };
  }

  const Mesh mesh = generate_beam_mesh(config);
  const DiscreteSpace space(mesh, config.degree, 3);
  const HyperelasticMaterial& mat = config.material;
  const DofReduction reduction = DofReduction::from_mask(space.dirichlet_mask());

  const Eigen::VectorXd u0_full = interpolate_vector(
      space, [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(ic(x)); });

  BeamRun run;
  const SymmetricSparseMatrix K =
      reduce_matrix(assemble_linearized_stiffness(space, u0_full, mat), reduction);
  const SymmetricSparseMatrix M0 =
      reduce_matrix(build_scaled_mass_linearized(space, mat, 0.0), reduction);
  run.lambda_max0 = measure_lambda_max(K, M0);
  run.tcrit0 = 2.0 / std::sqrt(run.lambda_max0);
  SymmetricSparseMatrix M = M0;
  if (config.c > 0.0) {
    M = reduce_matrix(build_scaled_mass_linearized(space, mat, config.c), reduction);
    run.lambda_max = measure_lambda_max(K, M);
  } else {
    run.lambda_max = run.lambda_max0;
  }
  run.tcrit = 2.0 / std::sqrt(run.lambda_max);

  run.n_steps = static_cast<long>(std::ceil(config.final_time / (config.safety * run.tcrit)));
  // Rounding up to a cadence multiple keeps the recorded samples uniformly
  // spaced (the integrator always records the final step), which the
  // twist-spectrum post-processing requires. dt only shrinks.
  const long cad = std::max(1, config.cadence);
  run.n_steps = ((run.n_steps + cad - 1) / cad) * cad;
  run.dt = config.final_time / static_cast<double>(run.n_steps);

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Upper> mass_llt;
  mass_llt.compute(M.upper());
  if (mass_llt.info() != Eigen::Success)
    throw DefinitenessError("scaled beam mass failed to factorize", -1);

  SecondOrderSystem system;
  system.size = reduction.size();
  system.acceleration = [&](double, const Eigen::VectorXd& u_red) {
    const Eigen::VectorXd f = assemble_internal_force(space, reduction.expand_vector(u_red), mat);
    return Eigen::VectorXd(mass_llt.solve(-reduction.reduce_vector(f)));
  };

  // Probe corners on the unchamfered bottom edge of the tip cross-section.
  const double tol = 1e-9 * config.length;
  const Eigen::Vector3d corner_a(config.length, 0.0, 0.0);
  const Eigen::Vector3d corner_b(config.length, config.width, 0.0);
  const int dof_a = locate_scalar_dof(space, corner_a, tol);
  const int dof_b = locate_scalar_dof(space, corner_b, tol);
  const auto free_dof = [&](int scalar, int comp) {
    const int r = reduction.reduced_of_full[scalar * 3 + comp];
    if (r < 0) throw std::logic_error("beam probe dof is constrained");
    return r;
  };
  const int a0 = free_dof(dof_a, 0), a1 = free_dof(dof_a, 1), a2 = free_dof(dof_a, 2);
  const int b1 = free_dof(dof_b, 1), b2 = free_dof(dof_b, 2);

  const ProbeFunction probe = [&](const IntegratorState& state,
                                  std::map<std::string, std::vector<double>>& channels) {
    channels["ux"].push_back(state.u[a0]);
    channels["uy"].push_back(state.u[a1]);
    channels["uz"].push_back(state.u[a2]);
    const double dy = config.width + state.u[b1] - state.u[a1];
    const double dz = state.u[b2] - state.u[a2];
    channels["twist"].push_back(std::atan2(dz, dy));
    const double kinetic = 0.5 * state.v.dot(M.apply(state.v));
    channels["energy"].push_back(kinetic +
                                 strain_energy(space, reduction.expand_vector(state.u), mat));
  };

  IntegratorState state =
      make_state(system, 0.0, reduction.reduce_vector(u0_full),
                 Eigen::VectorXd::Zero(reduction.size()));
  run.history = integrate(system, std::move(state), run.dt, run.n_steps,
                          step_central_difference, config.cadence, probe);
  return run;
}

std::vector<BeamSweepRow> beam_tcrit_sweep(const BeamConfig& config,
                                           const std::vector<double>& c_values) {
  validate_geometry(config);
  const Mesh mesh = generate_beam_mesh(config);
  const DiscreteSpace space(mesh, config.degree, 3);
  const HyperelasticMaterial& mat = config.material;
  const DofReduction reduction = DofReduction::from_mask(space.dirichlet_mask());

  auto ic = config.initial_displacement;
  if (!ic) {
    if (config.radius <= config.length / std::numbers::pi)
      throw std::invalid_argument("beam_tcrit_sweep: radius must exceed length/pi");
    ic = [R = config.radius](const Eigen::Vector3d& x) {
      return beam_initial_displacement(x, R);
    };
  }
  const Eigen::VectorXd u0_full = interpolate_vector(
      space, [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(ic(x)); });
  const SymmetricSparseMatrix K =
      reduce_matrix(assemble_linearized_stiffness(space, u0_full, mat), reduction);

  const double tcrit0 = 2.0 / std::sqrt(measure_lambda_max(
                                  K, reduce_matrix(build_scaled_mass_linearized(space, mat, 0.0),
                                                   reduction)));
  std::vector<BeamSweepRow> rows;
  rows.reserve(c_values.size());
  for (double c : c_values) {
    BeamSweepRow row;
    row.c = c;
    if (c == 0.0) {
      row.tcrit = tcrit0;
    } else {
      const SymmetricSparseMatrix M =
          reduce_matrix(build_scaled_mass_linearized(space, mat, c), reduction);
      row.tcrit = 2.0 / std::sqrt(measure_lambda_max(K, M));
    }
    row.ratio = row.tcrit / tcrit0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vcmass
