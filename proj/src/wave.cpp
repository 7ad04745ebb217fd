#include "vcmass/wave.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SparseCholesky>

#include "vcmass/eigensolve.hpp"
#include "vcmass/errors.hpp"
#include "vcmass/scaling.hpp"

namespace vcmass {

namespace {

const double kPi = std::numbers::pi;

double term_frequency(const SeriesTerm& term) {
  return kPi * std::sqrt(static_cast<double>(term.n) * term.n +
                         static_cast<double>(term.m) * term.m);
}

}  // namespace

StandingWaveSolution::StandingWaveSolution(std::vector<SeriesTerm> terms, int dim)
    : terms_(std::move(terms)), dim_(dim) {
  if (dim_ != 1 && dim_ != 2)
    throw std::invalid_argument("StandingWaveSolution: dim must be 1 or 2");
}

StandingWaveSolution StandingWaveSolution::single_mode() {
  return StandingWaveSolution({{1.0, 1, 1}}, 2);
}

StandingWaveSolution StandingWaveSolution::nine_term_series() {
  return StandingWaveSolution(
      {
          {1.0, 3, 4},
          {0.8, 4, 3},
          {0.8, 6, 8},
          {0.6, 8, 6},
          {0.5, 5, 12},
          {0.2, 12, 5},
          {0.1, 9, 12},
          {0.05, 12, 9},
          {0.03, 8, 15},
      },
      2);
}

StandingWaveSolution StandingWaveSolution::string_mode(int n) {
  return StandingWaveSolution({{1.0, n, 0}}, 1);
}

double StandingWaveSolution::value(double t, const Eigen::VectorXd& x) const {
  double out = 0.0;
  for (const SeriesTerm& term : terms_) {
    double spatial = std::sin(term.n * kPi * x[0]);
    if (dim_ == 2) spatial *= std::sin(term.m * kPi * x[1]);
    out += term.w * std::cos(term_frequency(term) * t) * spatial;
  }
  return out;
}

double StandingWaveSolution::velocity(double t, const Eigen::VectorXd& x) const {
  double out = 0.0;
  for (const SeriesTerm& term : terms_) {
    const double omega = term_frequency(term);
    double spatial = std::sin(term.n * kPi * x[0]);
    if (dim_ == 2) spatial *= std::sin(term.m * kPi * x[1]);
    out -= term.w * omega * std::sin(omega * t) * spatial;
  }
  return out;
}

double StandingWaveSolution::neumann_g(double t, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& normal) const {
  double out = 0.0;
  for (const SeriesTerm& term : terms_) {
    const double cx = term.n * kPi * std::cos(term.n * kPi * x[0]);
    double dn;
    if (dim_ == 2) {
      const double cy = term.m * kPi * std::cos(term.m * kPi * x[1]);
      dn = cx * std::sin(term.m * kPi * x[1]) * normal[0] +
           std::sin(term.n * kPi * x[0]) * cy * normal[1];
    } else {
      dn = cx * normal[0];
    }
    out -= term.w * std::cos(term_frequency(term) * t) * dn;
  }
  return out;
}

double StandingWaveSolution::neumann_gdd(double t, const Eigen::VectorXd& x,
                                         const Eigen::VectorXd& normal) const {
  double out = 0.0;
  for (const SeriesTerm& term : terms_) {
    const double omega = term_frequency(term);
    const double cx = term.n * kPi * std::cos(term.n * kPi * x[0]);
    double dn;
    if (dim_ == 2) {
      const double cy = term.m * kPi * std::cos(term.m * kPi * x[1]);
      dn = cx * std::sin(term.m * kPi * x[1]) * normal[0] +
           std::sin(term.n * kPi * x[0]) * cy * normal[1];
    } else {
      dn = cx * normal[0];
    }
    out += term.w * omega * omega * std::cos(omega * t) * dn;
  }
  return out;
}

double measure_lambda_max(const SymmetricSparseMatrix& K, const SymmetricSparseMatrix& M,
                          int dense_limit) {
  if (K.dim() <= dense_limit) {
    const Spectrum s = solve_generalized_eigen(K, M);
    return s.eigenvalues[s.size() - 1];
  }
  return max_generalized_eigenvalue(K, M);
}

namespace {

double mesh_diameter(const Mesh& mesh) {
  double h = 0.0;
  for (int e = 0; e < static_cast<int>(mesh.elements.size()); ++e)
    h = std::max(h, element_diameter(mesh, e));
  return h;
}

}  // namespace

std::vector<ConvergenceRow> run_convergence(const std::function<Mesh(int)>& mesh_at,
                                            int refinements, const StandingWaveSolution& exact,
                                            const ConvergenceConfig& config) {
  const MaterialScalar mat{1.0, 1.0};
  std::vector<ConvergenceRow> rows;

  for (int r = 0; r < refinements; ++r) {
    const Mesh mesh = mesh_at(r);
    const DiscreteSpace space(mesh, config.degree);
    const DofReduction red = DofReduction::from_mask(space.dirichlet_mask());

    const SymmetricSparseMatrix K = reduce_matrix(assemble_stiffness(space, mat), red);
    const SymmetricSparseMatrix M =
        reduce_matrix(build_scaled_mass(space, mat, config.c), red);

    ConvergenceRow row;
    row.h = mesh_diameter(mesh);
    row.tcrit = critical_timestep(measure_lambda_max(K, M));
    row.n_steps =
        std::max<long>(1, std::lround(std::ceil(config.final_time / (config.safety * row.tcrit))));
    const double dt = config.final_time / static_cast<double>(row.n_steps);

    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Upper> mass_llt;
    mass_llt.compute(M.upper());
    if (mass_llt.info() != Eigen::Success)
      throw DefinitenessError("scaled mass failed to factorize", -1);

    const bool has_neumann = [&] {
      for (const BoundaryFacet& f : mesh.boundary_facets)
        if (f.tag == BoundaryTag::neumann) return true;
      return false;
    }();
    LoadAssembler load;
    load.material = mat;
    load.c = config.c;
    load.g = [&exact](double t, const Eigen::VectorXd& x, const Eigen::VectorXd& n) {
      return exact.neumann_g(t, x, n);
    };
    load.gdd = [&exact](double t, const Eigen::VectorXd& x, const Eigen::VectorXd& n) {
      return exact.neumann_gdd(t, x, n);
    };

    SecondOrderSystem system;
    system.size = K.dim();
    system.acceleration = [&](double t, const Eigen::VectorXd& u) -> Eigen::VectorXd {
      Eigen::VectorXd rhs = -K.apply(u);
      if (has_neumann) rhs += red.reduce_vector(assemble_load(space, load, t));
      return mass_llt.solve(rhs);
    };

    const Eigen::VectorXd u0 =
        red.reduce_vector(interpolate(space, [&](const Eigen::VectorXd& x) {
          return exact.value(0.0, x);
        }));
    const Eigen::VectorXd v0 =
        red.reduce_vector(interpolate(space, [&](const Eigen::VectorXd& x) {
          return exact.velocity(0.0, x);
        }));

    const StepFunction step = config.integrator == IntegratorKind::central_difference
                                  ? &step_central_difference
                                  : &step_rk4;
    try {
      const TimeHistory history = integrate(system, make_state(system, 0.0, u0, v0), dt,
                                            row.n_steps, step, static_cast<int>(row.n_steps));
      const Eigen::VectorXd uh = red.expand_vector(history.snapshots.back());
      row.error = l2_error(space, uh, [&](const Eigen::VectorXd& x) {
        return exact.value(config.final_time, x);
      });
      if (!rows.empty() && rows.back().error > 0.0 && !rows.back().instability_step)
        row.rate = std::log2(rows.back().error / row.error);
    } catch (const InstabilityError& unstable) {
      row.error = std::numeric_limits<double>::quiet_NaN();
      row.instability_step = unstable.step();
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<TcritCell> tcrit_study(const std::function<Mesh(int)>& mesh_at, int refinements,
                                   const std::vector<int>& degrees,
                                   const std::vector<double>& cs) {
  const MaterialScalar mat{1.0, 1.0};
  std::vector<TcritCell> cells;

  for (int r = 0; r < refinements; ++r) {
    const Mesh mesh = mesh_at(r);
    for (int P : degrees) {
      const DiscreteSpace space(mesh, P);
      const DofReduction red = DofReduction::from_mask(space.dirichlet_mask());
      const SymmetricSparseMatrix K = reduce_matrix(assemble_stiffness(space, mat), red);
      const SymmetricSparseMatrix M = reduce_matrix(assemble_mass(space, mat), red);
      // β is linear in c, so the interface term is assembled once at c = 1
      // and rescaled per requested c.
      const auto unit_beta = [&](double h) {
        return estimate_beta(1.0, mesh.dim, P, h, FieldKind::scalar_field).value;
      };
      const SymmetricSparseMatrix G =
          reduce_matrix(assemble_interface_mass(space, mat, unit_beta), red);

      const double tcrit0 = critical_timestep(measure_lambda_max(K, M));
      for (double c : cs) {
        TcritCell cell;
        cell.refinement = r;
        cell.degree = P;
        cell.c = c;
        if (c == 0.0) {
          cell.tcrit = tcrit0;
        } else {
          const SymmetricSparseMatrix Mc = matrix_sum(M, G, c);
          cell.tcrit = critical_timestep(measure_lambda_max(K, Mc));
        }
        cell.ratio = cell.tcrit / tcrit0;
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

}  // namespace vcmass
