#include "vcmass/mode_match.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "vcmass/quadrature.hpp"

namespace vcmass {

namespace {

// Mesh-wide quadrature sampling: stacked point values of all discrete and
// analytic eigenfunctions share one weight vector, so L² inner products
// reduce to weighted dot products.
struct SampledModes {
  Eigen::VectorXd weights;
  Eigen::MatrixXd discrete;  // one column per numerical mode
  Eigen::MatrixXd analytic;  // one column per analytic mode
};

SampledModes sample_modes(const Spectrum& spectrum, const AnalyticEigenFamily& family,
                          const DiscreteSpace& space,
                          const std::vector<AnalyticMode>& modes) {
  const Mesh& mesh = space.mesh();
  const int N = spectrum.size();
  const DofReduction reduction = DofReduction::from_mask(space.dirichlet_mask());
  if (reduction.size() != spectrum.eigenvectors.rows())
    throw std::invalid_argument("match_modes: spectrum does not fit the space");

  // Expand reduced eigenvectors to the full numbering once.
  Eigen::MatrixXd full(space.num_dofs(), N);
  full.setZero();
  for (int r = 0; r < reduction.size(); ++r)
    full.row(reduction.full_of_reduced[r]) = spectrum.eigenvectors.row(r);

  int total_points = 0;
  std::vector<QuadratureRule> rules(mesh.num_elements());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    rules[e] = volume_rule(mesh.elements[e].kind, 2 * space.degree() + 2);
    total_points += rules[e].num_points();
  }

  SampledModes out;
  out.weights.resize(total_points);
  out.discrete.resize(total_points, N);
  out.analytic.resize(total_points, static_cast<int>(modes.size()));

  int row = 0;
  Eigen::VectorXd values;
  Eigen::MatrixXd grads;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ShapeBasis& basis = shape_basis(mesh.elements[e].kind, space.degree());
    const std::vector<int>& dofs = space.cell_scalar_dofs(e);
    Eigen::MatrixXd coeffs(basis.size(), N);
    for (int a = 0; a < basis.size(); ++a) coeffs.row(a) = full.row(dofs[a]);
    for (int q = 0; q < rules[e].num_points(); ++q, ++row) {
      const Eigen::VectorXd xi = rules[e].points.row(q).transpose();
      basis.eval(xi, values, grads);
      const Eigen::VectorXd x = map_to_physical(mesh, e, xi);
      out.weights[row] =
          rules[e].weights[q] * geometry_jacobian(mesh, e, xi).determinant();
      out.discrete.row(row) = values.transpose() * coeffs;
      for (int a = 0; a < static_cast<int>(modes.size()); ++a)
        out.analytic(row, a) = family.eval(modes[a], x);
    }
  }
  return out;
}

}  // namespace

std::vector<int> match_modes(Spectrum& spectrum, const AnalyticEigenFamily& family,
                             const DiscreteSpace& space) {
  const int N = spectrum.size();
  if (N == 0) throw std::invalid_argument("match_modes: empty spectrum");
  const std::vector<AnalyticMode> modes = family.first(N);
  SampledModes sampled = sample_modes(spectrum, family, space, modes);

  // L²-normalize all columns, then the squared distance minimized over sign
  // is 2 - 2|<a,u>|: the greedy argmin is the argmax of the Gram magnitude.
  for (auto* block : {&sampled.discrete, &sampled.analytic})
    for (int k = 0; k < block->cols(); ++k) {
      const double norm2 = block->col(k).cwiseAbs2().dot(sampled.weights);
      if (norm2 <= 0.0) throw std::logic_error("match_modes: zero-norm mode");
      block->col(k) /= std::sqrt(norm2);
    }
  const Eigen::MatrixXd gram =
      sampled.analytic.transpose() * sampled.weights.asDiagonal() * sampled.discrete;

  std::vector<int> assignment(N, -1);
  std::vector<bool> used(N, false);
  for (int a = 0; a < N; ++a) {
    int best = -1;
    double best_mag = -1.0;
    for (int k = 0; k < N; ++k) {
      if (used[k]) continue;
      const double mag = std::abs(gram(a, k));
      if (mag > best_mag) {
        best_mag = mag;
        best = k;
      }
    }
    assignment[a] = best;
    used[best] = true;
  }
  spectrum.matched = assignment;
  return assignment;
}

std::vector<std::pair<double, double>> normalized_spectrum(const Spectrum& spectrum,
                                                           const AnalyticEigenFamily& family) {
  const int N = static_cast<int>(spectrum.matched.size());
  if (N == 0) throw std::invalid_argument("normalized_spectrum: run match_modes first");
  const std::vector<AnalyticMode> modes = family.first(N);
  std::vector<std::pair<double, double>> curve(N);
  for (int a = 0; a < N; ++a) {
    const double ratio =
        std::sqrt(spectrum.eigenvalues[spectrum.matched[a]] / modes[a].lambda);
    curve[a] = {static_cast<double>(a + 1) / N, ratio};
  }
  return curve;
}

}  // namespace vcmass
