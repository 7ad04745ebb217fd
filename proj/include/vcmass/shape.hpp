#pragma once

#include <vector>

#include <Eigen/Core>

#include "vcmass/mesh.hpp"

namespace vcmass {

enum class EntityType { vertex, edge, face, cell };

/// Classification of a reference node against the element boundary, used to
/// build a conforming global numbering. `sub` orders nodes within an entity;
/// for edges it counts lattice steps from the edge's first local vertex.
struct NodeEntity {
  EntityType type;
  int index;
  int sub;
};

/// Nodal Lagrange basis of one element kind and degree on the equispaced
/// reference lattice. Instances are cached; obtain them via `shape_basis`.
class ShapeBasis {
public:
  ShapeBasis(ElementKind kind, int degree);

  ElementKind kind() const { return kind_; }
  int degree() const { return degree_; }
  int size() const { return static_cast<int>(nodes_.rows()); }
  const Eigen::MatrixXd& nodes() const { return nodes_; }
  const std::vector<NodeEntity>& entities() const { return entities_; }

  /// Basis values and reference gradients at `xi`. `values` has one entry
  /// per node, `grads` one row per node.
  void eval(const Eigen::VectorXd& xi, Eigen::VectorXd& values,
            Eigen::MatrixXd& grads) const;

  /// Local nodes lying on face `face`, including its vertices and edges.
  const std::vector<int>& face_closure(int face) const { return face_closure_[face]; }

private:
  ElementKind kind_;
  int degree_;
  Eigen::MatrixXd nodes_;
  std::vector<NodeEntity> entities_;
  std::vector<std::vector<int>> face_closure_;
};

/// Cached basis lookup. Intervals, triangles and quads support degrees 1..4,
/// hexes 1..2; anything else raises UnsupportedConfigError.
const ShapeBasis& shape_basis(ElementKind kind, int degree);

/// Convenience wrapper returning values and gradients at a single point.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> shape_eval(ElementKind kind, int degree,
                                                       const Eigen::VectorXd& xi);

}  // namespace vcmass
