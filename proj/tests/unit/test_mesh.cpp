#include <doctest.h>

#include <cmath>
#include <random>

#include "vcmass/mesh.hpp"

using namespace vcmass;

namespace {

BoundaryTag left_edge_dirichlet(const Eigen::VectorXd& x) {
  return x[0] < 1e-12 ? BoundaryTag::dirichlet : BoundaryTag::neumann;
}

}  // namespace

TEST_CASE("interval mesh counts and diameters") {
  const Mesh mesh = generate_interval_mesh(1.0, 4);
  CHECK(mesh.num_nodes() == 5);
  CHECK(mesh.num_elements() == 4);
  CHECK(mesh.interior_facets.size() == 3);
  CHECK(mesh.boundary_facets.size() == 2);
  for (int e = 0; e < 4; ++e) CHECK(element_diameter(mesh, e) == doctest::Approx(0.25));

  const Mesh fine = generate_interval_mesh(2.0, 100);
  for (int e = 0; e < fine.num_elements(); ++e)
    CHECK(element_diameter(fine, e) == doctest::Approx(0.02));
}

TEST_CASE("quad grid counts, diameters and facet normals") {
  const Mesh mesh = generate_grid_mesh(ElementKind::quad, 1.0, 3);
  CHECK(mesh.num_nodes() == 16);
  CHECK(mesh.num_elements() == 9);
  CHECK(mesh.interior_facets.size() == 12);
  CHECK(mesh.boundary_facets.size() == 12);
  for (int e = 0; e < 9; ++e)
    CHECK(element_diameter(mesh, e) == doctest::Approx(std::sqrt(2.0) / 3.0));

  // Interior normals are axis-aligned and point from the left element toward
  // the right one.
  for (const InteriorFacet& f : mesh.interior_facets) {
    CHECK(f.normal.norm() == doctest::Approx(1.0));
    CHECK(std::abs(f.normal.cwiseAbs().maxCoeff() - 1.0) < 1e-12);
    const Eigen::VectorXd cl = map_to_physical(mesh, f.left, Eigen::Vector2d(0.5, 0.5));
    const Eigen::VectorXd cr = map_to_physical(mesh, f.right, Eigen::Vector2d(0.5, 0.5));
    CHECK(f.normal.head(2).dot(cr - cl) > 0.0);
  }
}

TEST_CASE("triangle grid splits every cell in two") {
  const Mesh mesh = generate_grid_mesh(ElementKind::triangle, 1.0, 2);
  CHECK(mesh.num_elements() == 8);
  CHECK(mesh.interior_facets.size() == 8);
  CHECK(mesh.boundary_facets.size() == 8);
  for (int e = 0; e < mesh.num_elements(); ++e)
    CHECK(element_diameter(mesh, e) == doctest::Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("hex grid counts and diameters") {
  const Mesh mesh = generate_grid_mesh(ElementKind::hex, 1.0, 2);
  CHECK(mesh.num_nodes() == 27);
  CHECK(mesh.num_elements() == 8);
  CHECK(mesh.interior_facets.size() == 12);
  CHECK(mesh.boundary_facets.size() == 24);
  for (int e = 0; e < 8; ++e)
    CHECK(element_diameter(mesh, e) == doctest::Approx(std::sqrt(3.0) / 2.0));

  for (const InteriorFacet& f : mesh.interior_facets) {
    const Eigen::VectorXd cl = map_to_physical(mesh, f.left, Eigen::Vector3d(0.5, 0.5, 0.5));
    const Eigen::VectorXd cr = map_to_physical(mesh, f.right, Eigen::Vector3d(0.5, 0.5, 0.5));
    CHECK(f.normal.dot(cr - cl) > 0.0);
  }
}

TEST_CASE("facet mean diameter averages both sides") {
  Mesh mesh;
  mesh.dim = 1;
  mesh.nodes.resize(3, 1);
  mesh.nodes << 0.0, 0.1, 0.4;
  mesh.elements.push_back({ElementKind::interval, {0, 1}});
  mesh.elements.push_back({ElementKind::interval, {1, 2}});
  mesh.build_facets(nullptr);
  REQUIRE(mesh.interior_facets.size() == 1);
  CHECK(facet_mean_diameter(mesh, mesh.interior_facets[0]) == doctest::Approx(0.2));
}

TEST_CASE("boundary tags follow the classifier") {
  const Mesh mesh = generate_grid_mesh(ElementKind::quad, 1.0, 3, left_edge_dirichlet);
  int dirichlet = 0, neumann = 0;
  for (const BoundaryFacet& b : mesh.boundary_facets)
    (b.tag == BoundaryTag::dirichlet ? dirichlet : neumann)++;
  CHECK(dirichlet == 3);
  CHECK(neumann == 9);
}

TEST_CASE("geometry map round-trips through its inverse") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unit(0.1, 0.9);

  // A deliberately non-affine quad.
  Mesh mesh;
  mesh.dim = 2;
  mesh.nodes.resize(4, 2);
  mesh.nodes << 0.0, 0.0, 1.2, 0.1, 1.0, 1.3, -0.1, 0.9;
  mesh.elements.push_back({ElementKind::quad, {0, 1, 2, 3}});
  mesh.build_facets(nullptr);

  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd xi(2);
    xi << unit(rng), unit(rng);
    const Eigen::VectorXd x = map_to_physical(mesh, 0, xi);
    CHECK((map_to_reference(mesh, 0, x) - xi).norm() < 1e-10);
  }
}

TEST_CASE("facet points carry outward normals and surface jacobians") {
  const Mesh mesh = generate_grid_mesh(ElementKind::quad, 1.0, 2);
  // Bottom edge of the lower-left cell.
  const FacetPoint p = facet_point(mesh, 0, 0, Eigen::VectorXd::Constant(1, 0.5));
  CHECK(p.x[0] == doctest::Approx(0.25));
  CHECK(p.x[1] == doctest::Approx(0.0));
  CHECK(p.normal[0] == doctest::Approx(0.0));
  CHECK(p.normal[1] == doctest::Approx(-1.0));
  CHECK(p.area_element == doctest::Approx(0.5));
}

TEST_CASE("inverted elements are rejected") {
  Mesh mesh;
  mesh.dim = 2;
  mesh.nodes.resize(4, 2);
  mesh.nodes << 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0;
  // Clockwise vertex order flips the Jacobian sign.
  mesh.elements.push_back({ElementKind::quad, {0, 3, 2, 1}});
  CHECK_THROWS_AS(mesh.build_facets(nullptr), std::invalid_argument);
}

TEST_CASE("mesh generators validate their arguments") {
  CHECK_THROWS_AS(generate_interval_mesh(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_grid_mesh(ElementKind::quad, -1.0, 3), std::invalid_argument);
}
