#include "vcmass/scaling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vcmass {

namespace {

void validate_config(int dim, int degree) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (degree < 1 || degree > 4) throw std::invalid_argument("degree must be in 1..4");
}

}  // namespace

BetaEstimate estimate_beta(double c, int dim, int degree, double h, FieldKind field) {
  validate_config(dim, degree);
  if (c < 0.0) throw std::invalid_argument("estimate_beta: c must be non-negative");
  if (h <= 0.0) throw std::invalid_argument("estimate_beta: h must be positive");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  // Scalar fields see the dimension squared, vector fields to the fourth.
  double dpow = static_cast<double>(dim) * dim;
  if (field == FieldKind::vector_field) dpow *= dpow;
  const double P = degree;
  BetaEstimate out{c, dim, degree, h, field, 0.0};
  out.value = c * 0.25 / (dpow * pi2) / (2.0 * P * P * P - P * P) * h * h * h;
  return out;
}

double lambda_max_estimate(const MaterialScalar& mat, int dim, int degree, double h) {
  validate_config(dim, degree);
  if (h <= 0.0) throw std::invalid_argument("lambda_max_estimate: h must be positive");
  const double k = dim * std::numbers::pi * degree / h;
  return mat.T / mat.rho * k * k;
}

double critical_timestep(double lambda_max) {
  if (lambda_max <= 0.0)
    throw std::invalid_argument("critical_timestep: lambda_max must be positive");
  return 2.0 / std::sqrt(lambda_max);
}

double theta_prediction(double c, double b) {
  if (c < 0.0 || b <= 0.0) throw std::invalid_argument("theta_prediction: need c >= 0, b > 0");
  return std::sqrt(c * b + 1.0);
}

double consistent_mass_branch_ratio(int dim, int degree) {
  validate_config(dim, degree);
  // Measured once on uniform unit-coefficient Dirichlet meshes as
  // lambda_max(consistent) / lambda_max_estimate, Richardson-extrapolated in
  // the element count, then frozen. On tensor-product elements the discrete
  // eigenvalues are sums of per-direction values, so the ratio is independent
  // of the dimension; the P=1 entry is the exact dispersion value 12/pi^2.
  static const double table[4] = {
      12.0 / (std::numbers::pi * std::numbers::pi),
      1.5198178,
      1.9152507,
      2.4078671,
  };
  (void)dim;
  return table[degree - 1];
}

SymmetricSparseMatrix build_scaled_mass(const DiscreteSpace& space, const MaterialScalar& mat,
                                        double c) {
  if (c < 0.0) throw std::invalid_argument("build_scaled_mass: c must be non-negative");
  SymmetricSparseMatrix M = assemble_mass(space, mat);
  if (c == 0.0) return M;
  const int dim = space.mesh().dim;
  const int P = space.degree();
  const auto weight = [&](double h) {
    return estimate_beta(c, dim, P, h, FieldKind::scalar_field).value;
  };
  const SymmetricSparseMatrix G = assemble_interface_mass(space, mat, weight);
  return matrix_sum(M, G, 1.0);
}

}  // namespace vcmass
