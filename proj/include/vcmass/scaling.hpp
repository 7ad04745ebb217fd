#pragma once

#include "vcmass/assembly.hpp"

namespace vcmass {

enum class FieldKind { scalar_field, vector_field };

/// Penalty strength for one element size. `value` carries the resolved
/// coefficient c/4 · 1/(d²π²) · 1/(2P³−P²) · h³; vector fields replace
/// d² by d⁴.
struct BetaEstimate {
  double c;
  int dim;
  int degree;
  double h;
  FieldKind field;
  double value;
};

BetaEstimate estimate_beta(double c, int dim, int degree, double h, FieldKind field);

/// Sharp estimate of the largest discrete eigenvalue of the unscaled system
/// on a uniform grid: (T/rho) (dπP/h)², with h the element diameter.
double lambda_max_estimate(const MaterialScalar& mat, int dim, int degree, double h);

/// Critical time step of central differencing: 2/√λ_max.
double critical_timestep(double lambda_max);

/// Predicted critical-time-step gain θ = √(c·b + 1), where b is the ratio
/// between the consistent-mass λ_max and the estimate above.
double theta_prediction(double c, double b);

/// Measured λ_max ratio b for uniform unit-coefficient meshes, by dimension
/// and degree. Values were computed once from unscaled spectra and frozen.
double consistent_mass_branch_ratio(int dim, int degree);

/// M + c · M_Γ(β₁(h_f)) : consistent mass plus the interface penalty with
/// the per-facet weight β₁ = estimate_beta(1, d, P, h_f)·value baked in.
SymmetricSparseMatrix build_scaled_mass(const DiscreteSpace& space, const MaterialScalar& mat,
                                        double c);

}  // namespace vcmass
