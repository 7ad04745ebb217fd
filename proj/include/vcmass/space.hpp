#pragma once

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "vcmass/mesh.hpp"
#include "vcmass/shape.hpp"

namespace vcmass {

/// Continuous Lagrange finite element space of one degree over a mesh.
/// Scalar DOFs are numbered by entity block: mesh vertices first, then edge
/// interiors, then face interiors, then cell interiors, each block ordered by
/// global entity index. Vector spaces interleave `components` values per
/// scalar DOF.
class DiscreteSpace {
public:
  DiscreteSpace(const Mesh& mesh, int degree, int components = 1);

  const Mesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int components() const { return components_; }
  int num_scalar_dofs() const { return num_scalar_; }
  int num_dofs() const { return num_scalar_ * components_; }

  /// Scalar DOFs of element `e`, one per basis node, in basis node order.
  const std::vector<int>& cell_scalar_dofs(int e) const { return cell_dofs_[e]; }

  /// Expanded DOF list of element `e`: scalar DOF s contributes entries
  /// s*components+c, node-major.
  std::vector<int> cell_dofs(int e) const;

  /// Physical position of every scalar DOF.
  const Eigen::MatrixXd& dof_coords() const { return dof_coords_; }

  /// True for each DOF supported on a Dirichlet-tagged boundary facet.
  const std::vector<bool>& dirichlet_mask() const { return dirichlet_mask_; }
  int num_constrained() const { return num_constrained_; }

private:
  const Mesh* mesh_;
  int degree_;
  int components_;
  int num_scalar_ = 0;
  std::vector<std::vector<int>> cell_dofs_;
  Eigen::MatrixXd dof_coords_;
  std::vector<bool> dirichlet_mask_;
  int num_constrained_ = 0;
};

/// Nodal interpolation of a scalar field (components must be 1).
Eigen::VectorXd interpolate(const DiscreteSpace& space,
                            const std::function<double(const Eigen::VectorXd&)>& field);

/// Nodal interpolation of a vector field returning `components` values.
Eigen::VectorXd interpolate_vector(
    const DiscreteSpace& space,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& field);

/// Index translation between the full DOF set and the free (unconstrained)
/// subset selected by a mask.
struct DofReduction {
  int full_size = 0;
  std::vector<int> full_of_reduced;
  std::vector<int> reduced_of_full;  // -1 on constrained entries

  /// Builds the reduction from a constraint mask. Throws EmptySystemError
  /// when nothing remains free.
  static DofReduction from_mask(const std::vector<bool>& constrained);

  int size() const { return static_cast<int>(full_of_reduced.size()); }
  Eigen::VectorXd reduce_vector(const Eigen::VectorXd& full) const;
  Eigen::VectorXd expand_vector(const Eigen::VectorXd& reduced) const;  // zero padding
};

}  // namespace vcmass
