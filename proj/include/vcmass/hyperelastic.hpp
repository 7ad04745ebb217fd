#pragma once

#include <functional>

#include "vcmass/sparse.hpp"
#include "vcmass/space.hpp"

namespace vcmass {

/// Saint Venant-Kirchhoff solid: reference density and Lame parameters.
struct HyperelasticMaterial {
  double rho0 = 1.0;
  double lambda = 1.0;
  double mu = 1.0;

  static HyperelasticMaterial from_youngs(double rho0, double E, double nu);

  double bulk_modulus() const { return lambda + 2.0 / 3.0 * mu; }

  /// Largest eigenvalue of the material response tensor: max(mu, K).
  double stiffness_norm() const;
};

/// Kinematic and stress tensors of one material point, all d x d in the
/// reference configuration.
struct DeformationState {
  Eigen::MatrixXd grad_u;
  Eigen::MatrixXd F;  // I + grad_u
  Eigen::MatrixXd E;  // Green-Lagrange strain 1/2(F^T F - I)
  Eigen::MatrixXd S;  // second Piola-Kirchhoff, lambda tr(E) I + 2 mu E
  Eigen::MatrixXd P;  // first Piola-Kirchhoff, F S
};

DeformationState stress_state(const Eigen::MatrixXd& grad_u, const HyperelasticMaterial& mat);

/// Symmetric part of the displacement gradient. Not rotation-invariant;
/// used only inside the penalty term and the tangent stiffness.
Eigen::MatrixXd linear_strain(const Eigen::MatrixXd& grad_u);

/// Stored energy ∫ 1/2 E:C:E of the displacement with coefficients `u`.
double strain_energy(const DiscreteSpace& space, const Eigen::VectorXd& u,
                     const HyperelasticMaterial& mat);

/// Internal force vector ∫ ∇v : P(u); the exact gradient of strain_energy
/// with respect to the coefficients.
Eigen::VectorXd assemble_internal_force(const DiscreteSpace& space, const Eigen::VectorXd& u,
                                        const HyperelasticMaterial& mat);

/// Gram matrix of linearized traction jumps: each interior facet contributes
/// [[ (C:ε(N_i e_k)) n ]] · [[ (C:ε(N_j e_l)) n ]] weighted by rho0/|C|²,
/// Neumann boundary facets the one-sided analogue. `facet_weight` maps the
/// facet length scale h to a scale factor; omit it for the raw operator.
SymmetricSparseMatrix assemble_linearized_interface_mass(
    const DiscreteSpace& space, const HyperelasticMaterial& mat,
    const std::function<double(double)>& facet_weight = nullptr);

/// M + c · M_Γ(β₁(h_f)) for vector fields: consistent mass plus the
/// linearized-traction penalty with the vector-field β baked in per facet.
/// Constant in time, so one factorization serves a whole explicit run.
SymmetricSparseMatrix build_scaled_mass_linearized(const DiscreteSpace& space,
                                                   const HyperelasticMaterial& mat, double c);

/// Tangent stiffness at the displacement `u0`: the Gateaux derivative of the
/// internal force, used for the critical-time-step eigenproblem. Symmetric by
/// construction.
SymmetricSparseMatrix assemble_linearized_stiffness(const DiscreteSpace& space,
                                                    const Eigen::VectorXd& u0,
                                                    const HyperelasticMaterial& mat);

}  // namespace vcmass
