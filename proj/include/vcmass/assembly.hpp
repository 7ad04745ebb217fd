#pragma once

#include <functional>

#include "vcmass/sparse.hpp"
#include "vcmass/space.hpp"

namespace vcmass {

/// Homogeneous scalar wave material: density rho and tensile pre-stress T.
struct MaterialScalar {
  double rho = 1.0;
  double T = 1.0;
};

/// Consistent mass matrix: entries ∫ rho N_i N_j.
SymmetricSparseMatrix assemble_mass(const DiscreteSpace& space, const MaterialScalar& mat);

/// Stiffness matrix: entries ∫ T ∇N_i·∇N_j.
SymmetricSparseMatrix assemble_stiffness(const DiscreteSpace& space, const MaterialScalar& mat);

/// Interface penalty mass matrix for scalar fields. Each interior facet
/// contributes the Gram matrix of the normal-traction jumps [[T ∂_n N_i]]
/// weighted by rho/T²; Neumann boundary facets contribute the one-sided
/// analogue. `facet_weight` maps the facet length scale h (mean of both
/// element diameters inside, the single diameter on the boundary) to a
/// scale factor; omit it for the raw operator.
SymmetricSparseMatrix assemble_interface_mass(
    const DiscreteSpace& space, const MaterialScalar& mat,
    const std::function<double(double)>& facet_weight = nullptr);

/// Time-dependent Neumann boundary data with the convention -T ∂_n u = g,
/// so the load contribution is -∫ g N_i. `gdd` is the second time
/// derivative of g, entering through the penalty-consistent flux term
/// -∫ β (rho/T²) g̈ (T ∂_n N_i) with the same per-facet β used in the
/// scaled mass matrix. Both evaluators receive (t, x, outward normal);
/// either may be null and is then treated as zero.
struct LoadAssembler {
  std::function<double(double, const Eigen::VectorXd&, const Eigen::VectorXd&)> g;
  std::function<double(double, const Eigen::VectorXd&, const Eigen::VectorXd&)> gdd;
  MaterialScalar material;
  double c = 0.0;
};

Eigen::VectorXd assemble_load(const DiscreteSpace& space, const LoadAssembler& load, double t);

/// L² norm of (u_h - exact) over the mesh, by quadrature of degree 2P+2.
double l2_error(const DiscreteSpace& space, const Eigen::VectorXd& coeffs,
                const std::function<double(const Eigen::VectorXd&)>& exact);

}  // namespace vcmass
