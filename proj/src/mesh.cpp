#include "vcmass/mesh.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <Eigen/Dense>

namespace vcmass {

namespace {

const std::array<std::array<int, 4>, 6> kHexFaces = {{
    {0, 3, 2, 1},  // z = 0
    {4, 5, 6, 7},  // z = 1
    {0, 1, 5, 4},  // y = 0
    {1, 2, 6, 5},  // x = 1
    {2, 3, 7, 6},  // y = 1
    {3, 0, 4, 7},  // x = 0
}};

const std::array<std::array<int, 2>, 12> kHexEdges = {{
    {0, 1}, {1, 2}, {2, 3}, {3, 0},
    {4, 5}, {5, 6}, {6, 7}, {7, 4},
    {0, 4}, {1, 5}, {2, 6}, {3, 7},
}};

const std::array<int, 2> kIntervalFace0 = {0};
const std::array<int, 2> kIntervalFace1 = {1};
const std::array<std::array<int, 2>, 3> kTriangleFaces = {{{0, 1}, {1, 2}, {2, 0}}};
const std::array<std::array<int, 2>, 4> kQuadFaces = {{{0, 1}, {1, 2}, {2, 3}, {3, 0}}};

// Multilinear (or barycentric) corner basis used for the geometry map.
void corner_basis(ElementKind kind, const Eigen::VectorXd& xi,
                  Eigen::VectorXd& values, Eigen::MatrixXd& grads) {
  switch (kind) {
    case ElementKind::interval: {
      const double x = xi[0];
      values.resize(2);
      values << 1.0 - x, x;
      grads.resize(2, 1);
      grads << -1.0, 1.0;
      return;
    }
    case ElementKind::triangle: {
      const double x = xi[0], y = xi[1];
      values.resize(3);
      values << 1.0 - x - y, x, y;
      grads.resize(3, 2);
      grads << -1.0, -1.0, 1.0, 0.0, 0.0, 1.0;
      return;
    }
    case ElementKind::quad: {
      const double x = xi[0], y = xi[1];
      values.resize(4);
      values << (1 - x) * (1 - y), x * (1 - y), x * y, (1 - x) * y;
      grads.resize(4, 2);
      grads << -(1 - y), -(1 - x),
                (1 - y), -x,
                y, x,
                -y, (1 - x);
      return;
    }
    case ElementKind::hex: {
      const double x = xi[0], y = xi[1], z = xi[2];
      const double xs[2] = {1 - x, x}, ys[2] = {1 - y, y}, zs[2] = {1 - z, z};
      const double dx[2] = {-1, 1}, dy[2] = {-1, 1}, dz[2] = {-1, 1};
      // Corner order: (0,0,0) (1,0,0) (1,1,0) (0,1,0) then the z=1 copies.
      const int ii[8] = {0, 1, 1, 0, 0, 1, 1, 0};
      const int jj[8] = {0, 0, 1, 1, 0, 0, 1, 1};
      const int kk[8] = {0, 0, 0, 0, 1, 1, 1, 1};
      values.resize(8);
      grads.resize(8, 3);
      for (int v = 0; v < 8; ++v) {
        values[v] = xs[ii[v]] * ys[jj[v]] * zs[kk[v]];
        grads(v, 0) = dx[ii[v]] * ys[jj[v]] * zs[kk[v]];
        grads(v, 1) = xs[ii[v]] * dy[jj[v]] * zs[kk[v]];
        grads(v, 2) = xs[ii[v]] * ys[jj[v]] * dz[kk[v]];
      }
      return;
    }
  }
  throw std::logic_error("corner_basis: unknown element kind");
}

}  // namespace

int kind_dimension(ElementKind kind) {
  switch (kind) {
    case ElementKind::interval: return 1;
    case ElementKind::triangle:
    case ElementKind::quad: return 2;
    case ElementKind::hex: return 3;
  }
  throw std::logic_error("kind_dimension: unknown element kind");
}

int kind_vertex_count(ElementKind kind) {
  switch (kind) {
    case ElementKind::interval: return 2;
    case ElementKind::triangle: return 3;
    case ElementKind::quad: return 4;
    case ElementKind::hex: return 8;
  }
  throw std::logic_error("kind_vertex_count: unknown element kind");
}

int kind_face_count(ElementKind kind) {
  switch (kind) {
    case ElementKind::interval: return 2;
    case ElementKind::triangle: return 3;
    case ElementKind::quad: return 4;
    case ElementKind::hex: return 6;
  }
  throw std::logic_error("kind_face_count: unknown element kind");
}

std::span<const int> face_vertices(ElementKind kind, int face) {
  switch (kind) {
    case ElementKind::interval:
      return face == 0 ? std::span<const int>(kIntervalFace0.data(), 1)
                       : std::span<const int>(kIntervalFace1.data(), 1);
    case ElementKind::triangle: return {kTriangleFaces[face].data(), 2};
    case ElementKind::quad: return {kQuadFaces[face].data(), 2};
    case ElementKind::hex: return {kHexFaces[face].data(), 4};
  }
  throw std::logic_error("face_vertices: unknown element kind");
}

std::span<const std::array<int, 2>> kind_edges(ElementKind kind) {
  switch (kind) {
    case ElementKind::interval: return {};
    case ElementKind::triangle: return {kTriangleFaces.data(), 3};
    case ElementKind::quad: return {kQuadFaces.data(), 4};
    case ElementKind::hex: return {kHexEdges.data(), 12};
  }
  throw std::logic_error("kind_edges: unknown element kind");
}

const Eigen::MatrixXd& reference_corners(ElementKind kind) {
  static const Eigen::MatrixXd interval = (Eigen::MatrixXd(2, 1) << 0, 1).finished();
  static const Eigen::MatrixXd triangle =
      (Eigen::MatrixXd(3, 2) << 0, 0, 1, 0, 0, 1).finished();
  static const Eigen::MatrixXd quad =
      (Eigen::MatrixXd(4, 2) << 0, 0, 1, 0, 1, 1, 0, 1).finished();
  static const Eigen::MatrixXd hex = (Eigen::MatrixXd(8, 3) <<
      0, 0, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0,
      0, 0, 1, 1, 0, 1, 1, 1, 1, 0, 1, 1).finished();
  switch (kind) {
    case ElementKind::interval: return interval;
    case ElementKind::triangle: return triangle;
    case ElementKind::quad: return quad;
    case ElementKind::hex: return hex;
  }
  throw std::logic_error("reference_corners: unknown element kind");
}

std::string to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::interval: return "interval";
    case ElementKind::triangle: return "triangle";
    case ElementKind::quad: return "quad";
    case ElementKind::hex: return "hex";
  }
  return "?";
}

std::string to_string(BoundaryTag tag) {
  return tag == BoundaryTag::dirichlet ? "dirichlet" : "neumann";
}

Eigen::MatrixXd Mesh::element_corners(int e) const {
  const MeshElement& el = elements[e];
  Eigen::MatrixXd c(static_cast<int>(el.nodes.size()), dim);
  for (int v = 0; v < c.rows(); ++v) c.row(v) = nodes.row(el.nodes[v]);
  return c;
}

Eigen::VectorXd map_to_physical(const Mesh& mesh, int e, const Eigen::VectorXd& xi) {
  Eigen::VectorXd n;
  Eigen::MatrixXd g;
  corner_basis(mesh.elements[e].kind, xi, n, g);
  return mesh.element_corners(e).transpose() * n;
}

Eigen::MatrixXd geometry_jacobian(const Mesh& mesh, int e, const Eigen::VectorXd& xi) {
  Eigen::VectorXd n;
  Eigen::MatrixXd g;
  corner_basis(mesh.elements[e].kind, xi, n, g);
  return mesh.element_corners(e).transpose() * g;
}

Eigen::VectorXd map_to_reference(const Mesh& mesh, int e, const Eigen::VectorXd& x) {
  const ElementKind kind = mesh.elements[e].kind;
  const int d = kind_dimension(kind);
  Eigen::VectorXd xi = kind == ElementKind::triangle
                           ? Eigen::VectorXd::Constant(d, 1.0 / 3.0)
                           : Eigen::VectorXd::Constant(d, 0.5);
  const double scale = 1.0 + x.norm();
  for (int it = 0; it < 30; ++it) {
    const Eigen::VectorXd r = x - map_to_physical(mesh, e, xi);
    if (r.norm() <= 1e-13 * scale) return xi;
    xi += geometry_jacobian(mesh, e, xi).partialPivLu().solve(r);
  }
  throw std::runtime_error("map_to_reference: Newton iteration did not converge");
}

Eigen::VectorXd face_to_reference(ElementKind kind, int face, const Eigen::VectorXd& s) {
  const Eigen::MatrixXd& corners = reference_corners(kind);
  const auto fv = face_vertices(kind, face);
  if (kind == ElementKind::interval) return corners.row(fv[0]).transpose();
  if (fv.size() == 2) {
    return (1 - s[0]) * corners.row(fv[0]).transpose() + s[0] * corners.row(fv[1]).transpose();
  }
  const double u = s[0], v = s[1];
  return (1 - u) * (1 - v) * corners.row(fv[0]).transpose() +
         u * (1 - v) * corners.row(fv[1]).transpose() +
         u * v * corners.row(fv[2]).transpose() +
         (1 - u) * v * corners.row(fv[3]).transpose();
}

Eigen::MatrixXd face_reference_tangents(ElementKind kind, int face) {
  const Eigen::MatrixXd& corners = reference_corners(kind);
  const auto fv = face_vertices(kind, face);
  const int d = kind_dimension(kind);
  Eigen::MatrixXd t(d, std::max<int>(d - 1, 0));
  if (d == 1) return t;
  t.col(0) = (corners.row(fv[1]) - corners.row(fv[0])).transpose();
  // All reference faces are flat parallelograms, so two edge vectors suffice.
  if (d == 3) t.col(1) = (corners.row(fv[3]) - corners.row(fv[0])).transpose();
  return t;
}

FacetPoint facet_point(const Mesh& mesh, int e, int face, const Eigen::VectorXd& s) {
  const ElementKind kind = mesh.elements[e].kind;
  const int d = mesh.dim;
  const Eigen::VectorXd xi = face_to_reference(kind, face, s);
  FacetPoint p;
  p.x = map_to_physical(mesh, e, xi);
  if (d == 1) {
    p.normal = Eigen::VectorXd::Constant(1, face == 0 ? -1.0 : 1.0);
    p.area_element = 1.0;
    return p;
  }
  const Eigen::MatrixXd tp = geometry_jacobian(mesh, e, xi) * face_reference_tangents(kind, face);
  if (d == 2) {
    const Eigen::Vector2d t = tp.col(0);
    p.area_element = t.norm();
    // Faces run counter-clockwise, interior to the left; rotating the tangent
    // by -90 degrees points outward.
    p.normal = (Eigen::VectorXd(2) << t.y(), -t.x()).finished() / p.area_element;
  } else {
    const Eigen::Vector3d n = Eigen::Vector3d(tp.col(0)).cross(Eigen::Vector3d(tp.col(1)));
    p.area_element = n.norm();
    p.normal = n / p.area_element;
  }
  return p;
}

void Mesh::build_facets(const std::function<BoundaryTag(const Eigen::VectorXd&)>& tag_of) {
  interior_facets.clear();
  boundary_facets.clear();

  for (int e = 0; e < num_elements(); ++e) {
    const ElementKind kind = elements[e].kind;
    if (kind_dimension(kind) != dim)
      throw std::invalid_argument("mesh: element dimension does not match mesh dimension");
    const Eigen::VectorXd center =
        kind == ElementKind::triangle ? Eigen::VectorXd::Constant(dim, 1.0 / 3.0)
                                      : Eigen::VectorXd::Constant(dim, 0.5);
    if (geometry_jacobian(*this, e, center).determinant() <= 0.0)
      throw std::invalid_argument("mesh: element " + std::to_string(e) +
                                  " has non-positive Jacobian");
  }

  std::map<std::vector<int>, std::vector<std::pair<int, int>>> by_key;
  for (int e = 0; e < num_elements(); ++e) {
    const MeshElement& el = elements[e];
    for (int f = 0; f < kind_face_count(el.kind); ++f) {
      std::vector<int> key;
      for (int lv : face_vertices(el.kind, f)) key.push_back(el.nodes[lv]);
      std::sort(key.begin(), key.end());
      by_key[key].push_back({e, f});
    }
  }

  for (const auto& [key, owners] : by_key) {
    if (owners.size() > 2)
      throw std::invalid_argument("mesh: facet shared by more than two elements");
    const auto [e0, f0] = owners.front();
    const Eigen::VectorXd smid = Eigen::VectorXd::Constant(std::max(dim - 1, 0), 0.5);
    const FacetPoint p0 = facet_point(*this, e0, f0, smid);
    if (owners.size() == 1) {
      BoundaryFacet b;
      b.element = e0;
      b.face = f0;
      b.tag = tag_of ? tag_of(p0.x) : BoundaryTag::dirichlet;
      boundary_facets.push_back(b);
      continue;
    }
    const auto [e1, f1] = owners.back();
    const FacetPoint p1 = facet_point(*this, e1, f1, smid);
    if (p0.normal.dot(p1.normal) > -0.9)
      throw std::invalid_argument("mesh: inconsistent orientation across a shared facet");
    InteriorFacet facet;
    facet.left = e0;
    facet.left_face = f0;
    facet.right = e1;
    facet.right_face = f1;
    facet.normal = Eigen::Vector3d::Zero();
    facet.normal.head(dim) = p0.normal;
    interior_facets.push_back(facet);
  }
}

double element_diameter(const Mesh& mesh, int e) {
  const Eigen::MatrixXd c = mesh.element_corners(e);
  double diam = 0.0;
  for (int a = 0; a < c.rows(); ++a)
    for (int b = a + 1; b < c.rows(); ++b)
      diam = std::max(diam, (c.row(a) - c.row(b)).norm());
  return diam;
}

double facet_mean_diameter(const Mesh& mesh, const InteriorFacet& facet) {
  return 0.5 * (element_diameter(mesh, facet.left) + element_diameter(mesh, facet.right));
}

Mesh generate_interval_mesh(double length, int n,
                            const std::function<BoundaryTag(const Eigen::VectorXd&)>& tag_of) {
  if (n < 1 || length <= 0.0)
    throw std::invalid_argument("generate_interval_mesh: need n >= 1 and length > 0");
  Mesh mesh;
  mesh.dim = 1;
  mesh.nodes.resize(n + 1, 1);
  for (int i = 0; i <= n; ++i) mesh.nodes(i, 0) = length * i / n;
  for (int i = 0; i < n; ++i)
    mesh.elements.push_back({ElementKind::interval, {i, i + 1}});
  mesh.build_facets(tag_of);
  return mesh;
}

Mesh generate_grid_mesh(ElementKind kind, double length, int n,
                        const std::function<BoundaryTag(const Eigen::VectorXd&)>& tag_of) {
  if (n < 1 || length <= 0.0)
    throw std::invalid_argument("generate_grid_mesh: need n >= 1 and length > 0");
  if (kind == ElementKind::interval) return generate_interval_mesh(length, n, tag_of);

  Mesh mesh;
  mesh.dim = kind_dimension(kind);
  const int m = n + 1;
  const auto coord = [&](int i) { return length * i / n; };

  if (mesh.dim == 2) {
    mesh.nodes.resize(m * m, 2);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) mesh.nodes.row(i + m * j) << coord(i), coord(j);
    const auto id = [m](int i, int j) { return i + m * j; };
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        if (kind == ElementKind::quad) {
          mesh.elements.push_back(
              {kind, {id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)}});
        } else {
          // Split along the cell diagonal; both triangles counter-clockwise.
          mesh.elements.push_back({kind, {id(i, j), id(i + 1, j), id(i + 1, j + 1)}});
          mesh.elements.push_back({kind, {id(i, j), id(i + 1, j + 1), id(i, j + 1)}});
        }
      }
  } else {
    mesh.nodes.resize(m * m * m, 3);
    const auto id = [m](int i, int j, int k) { return i + m * (j + m * k); };
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i)
          mesh.nodes.row(id(i, j, k)) << coord(i), coord(j), coord(k);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          mesh.elements.push_back({kind,
                                   {id(i, j, k), id(i + 1, j, k), id(i + 1, j + 1, k),
                                    id(i, j + 1, k), id(i, j, k + 1), id(i + 1, j, k + 1),
                                    id(i + 1, j + 1, k + 1), id(i, j + 1, k + 1)}});
  }
  mesh.build_facets(tag_of);
  return mesh;
}

}  // namespace vcmass
