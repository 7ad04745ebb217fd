#include "vcmass/space.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "vcmass/errors.hpp"

namespace vcmass {

DiscreteSpace::DiscreteSpace(const Mesh& mesh, int degree, int components)
    : mesh_(&mesh), degree_(degree), components_(components) {
  if (components != 1 && components != mesh.dim)
    throw std::invalid_argument("DiscreteSpace: components must be 1 or the mesh dimension");
  const int P = degree;

  // Pass 1: discover edges and faces in deterministic element-scan order.
  std::map<std::array<int, 2>, int> edge_ids;
  std::map<std::array<int, 4>, int> face_ids;
  for (const MeshElement& el : mesh.elements) {
    for (const auto& edge : kind_edges(el.kind)) {
      std::array<int, 2> key = {el.nodes[edge[0]], el.nodes[edge[1]]};
      if (key[0] > key[1]) std::swap(key[0], key[1]);
      edge_ids.try_emplace(key, static_cast<int>(edge_ids.size()));
    }
    if (kind_dimension(el.kind) == 3 && P > 1) {
      for (int f = 0; f < kind_face_count(el.kind); ++f) {
        const auto fv = face_vertices(el.kind, f);
        std::array<int, 4> key = {el.nodes[fv[0]], el.nodes[fv[1]], el.nodes[fv[2]],
                                  el.nodes[fv[3]]};
        std::sort(key.begin(), key.end());
        face_ids.try_emplace(key, static_cast<int>(face_ids.size()));
      }
    }
  }

  const int per_edge = P - 1;
  // Hex faces carry (P-1)^2 interior nodes; P <= 2 keeps this at most one.
  const int per_face = (P - 1) * (P - 1);
  const int vertex_block = mesh.num_nodes();
  const int edge_block = vertex_block + static_cast<int>(edge_ids.size()) * per_edge;
  const int face_block = edge_block + static_cast<int>(face_ids.size()) * per_face;

  // Pass 2: resolve every element-local basis node to its global scalar DOF.
  cell_dofs_.resize(mesh.num_elements());
  int cell_cursor = face_block;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const MeshElement& el = mesh.elements[e];
    const ShapeBasis& basis = shape_basis(el.kind, P);
    const auto edges = kind_edges(el.kind);
    std::vector<int>& dofs = cell_dofs_[e];
    dofs.resize(basis.size());
    const int cell_base = cell_cursor;
    int cell_nodes = 0;
    for (int r = 0; r < basis.size(); ++r) {
      const NodeEntity& ent = basis.entities()[r];
      switch (ent.type) {
        case EntityType::vertex:
          dofs[r] = el.nodes[ent.index];
          break;
        case EntityType::edge: {
          const int ga = el.nodes[edges[ent.index][0]];
          const int gb = el.nodes[edges[ent.index][1]];
          std::array<int, 2> key = {std::min(ga, gb), std::max(ga, gb)};
          // Interior edge nodes run from the lower global vertex id upward,
          // so both neighbors agree on the ordering.
          const int slot = ga < gb ? ent.sub : per_edge - 1 - ent.sub;
          dofs[r] = vertex_block + edge_ids.at(key) * per_edge + slot;
          break;
        }
        case EntityType::face: {
          const auto fv = face_vertices(el.kind, ent.index);
          std::array<int, 4> key = {el.nodes[fv[0]], el.nodes[fv[1]], el.nodes[fv[2]],
                                    el.nodes[fv[3]]};
          std::sort(key.begin(), key.end());
          dofs[r] = edge_block + face_ids.at(key) * per_face + ent.sub;
          break;
        }
        case EntityType::cell:
          dofs[r] = cell_base + ent.sub;
          ++cell_nodes;
          break;
      }
    }
    cell_cursor += cell_nodes;
  }
  num_scalar_ = cell_cursor;

  dof_coords_.resize(num_scalar_, mesh.dim);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ShapeBasis& basis = shape_basis(mesh.elements[e].kind, P);
    for (int r = 0; r < basis.size(); ++r)
      dof_coords_.row(cell_dofs_[e][r]) =
          map_to_physical(mesh, e, basis.nodes().row(r).transpose()).transpose();
  }

  dirichlet_mask_.assign(num_dofs(), false);
  for (const BoundaryFacet& b : mesh.boundary_facets) {
    if (b.tag != BoundaryTag::dirichlet) continue;
    const ShapeBasis& basis = shape_basis(mesh.elements[b.element].kind, P);
    for (int r : basis.face_closure(b.face)) {
      const int s = cell_dofs_[b.element][r];
      for (int c = 0; c < components_; ++c) dirichlet_mask_[s * components_ + c] = true;
    }
  }
  for (bool m : dirichlet_mask_)
    if (m) ++num_constrained_;
}

std::vector<int> DiscreteSpace::cell_dofs(int e) const {
  const std::vector<int>& scalar = cell_dofs_[e];
  std::vector<int> out;
  out.reserve(scalar.size() * components_);
  for (int s : scalar)
    for (int c = 0; c < components_; ++c) out.push_back(s * components_ + c);
  return out;
}

Eigen::VectorXd interpolate(const DiscreteSpace& space,
                            const std::function<double(const Eigen::VectorXd&)>& field) {
  if (space.components() != 1)
    throw std::invalid_argument("interpolate: scalar field on a vector space");
  Eigen::VectorXd u(space.num_dofs());
  for (int s = 0; s < space.num_scalar_dofs(); ++s)
    u[s] = field(space.dof_coords().row(s).transpose());
  return u;
}

Eigen::VectorXd interpolate_vector(
    const DiscreteSpace& space,
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& field) {
  const int m = space.components();
  Eigen::VectorXd u(space.num_dofs());
  for (int s = 0; s < space.num_scalar_dofs(); ++s) {
    const Eigen::VectorXd v = field(space.dof_coords().row(s).transpose());
    if (v.size() != m)
      throw std::invalid_argument("interpolate_vector: field has wrong component count");
    u.segment(s * m, m) = v;
  }
  return u;
}

DofReduction DofReduction::from_mask(const std::vector<bool>& constrained) {
  DofReduction red;
  red.full_size = static_cast<int>(constrained.size());
  red.reduced_of_full.assign(red.full_size, -1);
  for (int i = 0; i < red.full_size; ++i) {
    if (constrained[i]) continue;
    red.reduced_of_full[i] = static_cast<int>(red.full_of_reduced.size());
    red.full_of_reduced.push_back(i);
  }
  if (red.full_of_reduced.empty())
    throw EmptySystemError("all degrees of freedom are constrained");
  return red;
}

Eigen::VectorXd DofReduction::reduce_vector(const Eigen::VectorXd& full) const {
  Eigen::VectorXd out(size());
  for (int r = 0; r < size(); ++r) out[r] = full[full_of_reduced[r]];
  return out;
}

Eigen::VectorXd DofReduction::expand_vector(const Eigen::VectorXd& reduced) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(full_size);
  for (int r = 0; r < size(); ++r) out[full_of_reduced[r]] = reduced[r];
  return out;
}

}  // namespace vcmass
