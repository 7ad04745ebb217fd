#include <doctest.h>

#include <cmath>
#include <random>

#include "vcmass/errors.hpp"
#include "vcmass/space.hpp"

using namespace vcmass;

TEST_CASE("scalar dof counts match tensor lattices") {
  for (int P = 1; P <= 4; ++P) {
    const Mesh mesh1 = generate_interval_mesh(1.0, 4);
    CHECK(DiscreteSpace(mesh1, P).num_scalar_dofs() == 4 * P + 1);

    const Mesh mesh2 = generate_grid_mesh(ElementKind::quad, 1.0, 3);
    CHECK(DiscreteSpace(mesh2, P).num_scalar_dofs() == (3 * P + 1) * (3 * P + 1));
  }
  const Mesh mesh3 = generate_grid_mesh(ElementKind::hex, 1.0, 2);
  CHECK(DiscreteSpace(mesh3, 2).num_scalar_dofs() == 125);

  // Triangle P=3 on a single split square: 4 vertices, 5 edges, 2 cells.
  const Mesh tri = generate_grid_mesh(ElementKind::triangle, 1.0, 1);
  CHECK(DiscreteSpace(tri, 3).num_scalar_dofs() == 4 + 5 * 2 + 2 * 1);
}

TEST_CASE("interpolants are single-valued across interior facets") {
  // Evaluating the same interpolated polynomial from both sides of a facet
  // exercises shared DOF identification and edge orientation.
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto check_mesh = [&](const Mesh& mesh, int P) {
    const DiscreteSpace space(mesh, P);
    const int d = mesh.dim;
    const auto field = [&](const Eigen::VectorXd& x) {
      double acc = 0.3;
      for (int k = 0; k < d; ++k) acc += (k + 1) * x[k];
      return std::pow(acc, P);
    };
    const Eigen::VectorXd u = interpolate(space, field);

    for (const InteriorFacet& facet : mesh.interior_facets) {
      for (int trial = 0; trial < 3; ++trial) {
        Eigen::VectorXd s(std::max(d - 1, 0));
        for (int k = 0; k < s.size(); ++k) s[k] = unit(rng);
        const Eigen::VectorXd xiL = face_to_reference(mesh.elements[facet.left].kind,
                                                      facet.left_face, s);
        const Eigen::VectorXd x = map_to_physical(mesh, facet.left, xiL);
        const Eigen::VectorXd xiR = map_to_reference(mesh, facet.right, x);

        double uL = 0.0, uR = 0.0;
        for (const auto& [e, xi, val] :
             {std::tuple{facet.left, xiL, &uL}, std::tuple{facet.right, xiR, &uR}}) {
          const auto [values, grads] = shape_eval(mesh.elements[e].kind, P, xi);
          const std::vector<int>& dofs = space.cell_scalar_dofs(e);
          for (int a = 0; a < values.size(); ++a) *val += values[a] * u[dofs[a]];
        }
        CHECK(uL == doctest::Approx(uR).epsilon(1e-11));
      }
    }
  };

  for (int P : {2, 3, 4}) {
    check_mesh(generate_grid_mesh(ElementKind::quad, 1.0, 2), P);
    check_mesh(generate_grid_mesh(ElementKind::triangle, 1.0, 2), P);
  }
  check_mesh(generate_grid_mesh(ElementKind::hex, 1.0, 2), 2);
}

TEST_CASE("dirichlet mask covers tagged boundaries") {
  const Mesh all = generate_grid_mesh(ElementKind::quad, 1.0, 2);
  const DiscreteSpace space_all(all, 2);
  int masked = 0;
  for (bool m : space_all.dirichlet_mask()) masked += m;
  CHECK(masked == 16);  // perimeter of the 5x5 refined lattice
  CHECK(space_all.num_constrained() == 16);

  const Mesh left = generate_grid_mesh(ElementKind::quad, 1.0, 2, [](const Eigen::VectorXd& x) {
    return x[0] < 1e-12 ? BoundaryTag::dirichlet : BoundaryTag::neumann;
  });
  const DiscreteSpace space_left(left, 2);
  int masked_left = 0;
  for (int s = 0; s < space_left.num_scalar_dofs(); ++s)
    if (space_left.dirichlet_mask()[s]) {
      ++masked_left;
      CHECK(space_left.dof_coords()(s, 0) == doctest::Approx(0.0));
    }
  CHECK(masked_left == 5);
}

TEST_CASE("vector spaces interleave components") {
  const Mesh mesh = generate_grid_mesh(ElementKind::quad, 1.0, 1);
  const DiscreteSpace space(mesh, 1, 2);
  CHECK(space.num_dofs() == 8);
  const std::vector<int> dofs = space.cell_dofs(0);
  REQUIRE(dofs.size() == 8);
  CHECK(dofs[0] == 2 * space.cell_scalar_dofs(0)[0]);
  CHECK(dofs[1] == 2 * space.cell_scalar_dofs(0)[0] + 1);

  const Eigen::VectorXd u = interpolate_vector(space, [](const Eigen::VectorXd& x) {
    return (Eigen::VectorXd(2) << x[0], -x[1]).finished();
  });
  for (int s = 0; s < space.num_scalar_dofs(); ++s) {
    CHECK(u[2 * s] == doctest::Approx(space.dof_coords()(s, 0)));
    CHECK(u[2 * s + 1] == doctest::Approx(-space.dof_coords()(s, 1)));
  }
}

TEST_CASE("dof reduction round-trips and rejects empty systems") {
  std::vector<bool> mask = {true, false, false, true, false};
  const DofReduction red = DofReduction::from_mask(mask);
  CHECK(red.size() == 3);
  Eigen::VectorXd full(5);
  full << 10, 20, 30, 40, 50;
  const Eigen::VectorXd reduced = red.reduce_vector(full);
  CHECK(reduced[0] == 20);
  CHECK(reduced[2] == 50);
  const Eigen::VectorXd back = red.expand_vector(reduced);
  CHECK(back[0] == 0.0);
  CHECK(back[1] == 20.0);
  CHECK(back[3] == 0.0);

  CHECK_THROWS_AS(DofReduction::from_mask({true, true}), EmptySystemError);
}
