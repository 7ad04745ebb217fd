#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace vcmass {

enum class ElementKind : std::uint8_t { interval, triangle, quad, hex };
enum class BoundaryTag : std::uint8_t { dirichlet, neumann };

int kind_dimension(ElementKind kind);
int kind_vertex_count(ElementKind kind);
int kind_face_count(ElementKind kind);

/// Corner indices of a face, ordered counter-clockwise when viewed from
/// outside the element. In 2D a face is an edge, in 1D a single vertex.
std::span<const int> face_vertices(ElementKind kind, int face);

/// Element edges as pairs of local vertex indices (3D only lists all 12 hex
/// edges; in 2D edges coincide with faces and are not listed here).
std::span<const std::array<int, 2>> kind_edges(ElementKind kind);

/// Reference corner coordinates, one row per vertex. Intervals live on [0,1],
/// quads/hexes on the unit square/cube, triangles on the unit simplex.
const Eigen::MatrixXd& reference_corners(ElementKind kind);

std::string to_string(ElementKind kind);
std::string to_string(BoundaryTag tag);

struct MeshElement {
  ElementKind kind;
  std::vector<int> nodes;
};

struct InteriorFacet {
  int left;
  int left_face;
  int right;
  int right_face;
  Eigen::Vector3d normal;  // unit normal at the facet midpoint, outward of `left`
};

struct BoundaryFacet {
  int element;
  int face;
  BoundaryTag tag;
};

/// Conforming unstructured mesh with explicit facet connectivity.
/// Treated as immutable once `build_facets` has run.
struct Mesh {
  int dim = 0;
  Eigen::MatrixXd nodes;  // one row per node
  std::vector<MeshElement> elements;
  std::vector<InteriorFacet> interior_facets;
  std::vector<BoundaryFacet> boundary_facets;

  int num_nodes() const { return static_cast<int>(nodes.rows()); }
  int num_elements() const { return static_cast<int>(elements.size()); }
  Eigen::VectorXd node(int i) const { return nodes.row(i).transpose(); }

  /// Corner coordinates of element `e`, one row per vertex.
  Eigen::MatrixXd element_corners(int e) const;

  /// Discovers interior facets (shared between exactly two elements) and
  /// boundary facets (owned by one). `tag_of` assigns a condition to each
  /// boundary facet midpoint; pass nullptr to mark everything Dirichlet.
  void build_facets(const std::function<BoundaryTag(const Eigen::VectorXd&)>& tag_of);
};

/// Largest vertex-to-vertex distance within element `e`.
double element_diameter(const Mesh& mesh, int e);

/// Mean of the two adjacent element diameters, the length scale used for
/// interior facet penalties.
double facet_mean_diameter(const Mesh& mesh, const InteriorFacet& facet);

/// Uniform mesh of [0,L] with n intervals. Boundary vertices are tagged by
/// `tag_of` evaluated at their coordinates (nullptr: all Dirichlet).
Mesh generate_interval_mesh(double length, int n,
                            const std::function<BoundaryTag(const Eigen::VectorXd&)>& tag_of = nullptr);

/// Uniform n x n (x n) grid of [0,L]^dim. `kind` selects quad, triangle
/// (each cell split into two) or hex cells and must match `dim`.
Mesh generate_grid_mesh(ElementKind kind, double length, int n,
                        const std::function<BoundaryTag(const Eigen::VectorXd&)>& tag_of = nullptr);

/// Geometry map of element `e`: physical image of reference point `xi`.
Eigen::VectorXd map_to_physical(const Mesh& mesh, int e, const Eigen::VectorXd& xi);

/// Jacobian dX/dxi of the geometry map at `xi` (dim x dim).
Eigen::MatrixXd geometry_jacobian(const Mesh& mesh, int e, const Eigen::VectorXd& xi);

/// Inverts the geometry map: finds xi with X(xi) = x by Newton iteration.
/// Exact after one step for affine elements; throws if it fails to converge.
Eigen::VectorXd map_to_reference(const Mesh& mesh, int e, const Eigen::VectorXd& x);

/// Embeds a facet-parameter point (dim-1 coordinates, empty in 1D) into the
/// reference coordinates of the element owning the face.
Eigen::VectorXd face_to_reference(ElementKind kind, int face, const Eigen::VectorXd& s);

/// Tangent columns d(xi)/d(s) of the face embedding, constant per face.
Eigen::MatrixXd face_reference_tangents(ElementKind kind, int face);

/// Physical data of one facet quadrature point.
struct FacetPoint {
  Eigen::VectorXd x;       // physical position
  Eigen::VectorXd normal;  // unit outward normal of the owning element
  double area_element;     // |dX/ds|, the surface Jacobian (1 in 1D)
};

/// Evaluates position, outward normal and surface Jacobian of face `face`
/// of element `e` at facet parameter `s`.
FacetPoint facet_point(const Mesh& mesh, int e, int face, const Eigen::VectorXd& s);

}  // namespace vcmass
