#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "vcmass/hyperelastic.hpp"
#include "vcmass/quadrature.hpp"

using namespace vcmass;

namespace {

Eigen::Matrix3d rotation(double angle, int axis) {
  return Eigen::Matrix3d(
      Eigen::AngleAxisd(angle, Eigen::Vector3d::Unit(axis)).toRotationMatrix());
}

// Random coefficient vector with entries in [-s, s].
Eigen::VectorXd random_coeffs(int n, double s, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = s * unit(rng);
  return u;
}

}  // namespace

TEST_CASE("Lame parameters follow from Young's modulus and Poisson ratio") {
  const HyperelasticMaterial mat = HyperelasticMaterial::from_youngs(2700.0, 73e9, 0.33);
  CHECK(mat.rho0 == 2700.0);
  CHECK(mat.lambda == doctest::Approx(5.32729e10).epsilon(1e-5));
  CHECK(mat.mu == doctest::Approx(2.74436e10).epsilon(1e-5));
  CHECK(mat.bulk_modulus() == doctest::Approx(7.15686e10).epsilon(1e-5));
  // Bulk modulus dominates the shear modulus for this alloy.
  CHECK(mat.stiffness_norm() == mat.bulk_modulus());
  CHECK_THROWS_AS(HyperelasticMaterial::from_youngs(1.0, 73e9, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(HyperelasticMaterial::from_youngs(1.0, -1.0, 0.3), std::invalid_argument);
}

TEST_CASE("stress state reproduces the hand-evaluated uniaxial stretch") {
  const HyperelasticMaterial mat{1.0, 1.0, 1.0};
  Eigen::Matrix3d grad = Eigen::Matrix3d::Zero();
  grad(0, 0) = 0.1;
  const DeformationState st = stress_state(grad, mat);
  CHECK(st.E(0, 0) == doctest::Approx(0.105).epsilon(1e-12));
  CHECK(st.S(0, 0) == doctest::Approx(0.315).epsilon(1e-12));
  CHECK(st.S(1, 1) == doctest::Approx(0.105).epsilon(1e-12));
  CHECK(st.S(2, 2) == doctest::Approx(0.105).epsilon(1e-12));
  CHECK(st.P(0, 0) == doctest::Approx(0.3465).epsilon(1e-12));
  CHECK(st.P(1, 1) == doctest::Approx(0.105).epsilon(1e-12));
}

TEST_CASE("Green-Lagrange strain vanishes for rotations, linear strain does not") {
  const HyperelasticMaterial mat{1.0, 2.0, 0.7};
  const Eigen::Matrix3d Q = rotation(0.8, 2) * rotation(-0.3, 0);
  const Eigen::Matrix3d grad = Q - Eigen::Matrix3d::Identity();

  const DeformationState st = stress_state(grad, mat);
  CHECK(st.E.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(st.S.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(st.P.cwiseAbs().maxCoeff() < 1e-14);

  // The linearized strain sees a spurious strain for the same rotation.
  CHECK(linear_strain(grad).cwiseAbs().maxCoeff() > 0.1);
  Eigen::Matrix3d skew = Eigen::Matrix3d::Zero();
  skew(0, 1) = 0.4;
  skew(1, 0) = -0.4;
  CHECK(linear_strain(skew).cwiseAbs().maxCoeff() == 0.0);
  Eigen::Matrix3d sym = skew + skew.transpose() + Eigen::Matrix3d::Identity();
  CHECK((linear_strain(sym) - sym).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("zero displacement carries no energy and no force") {
  const Mesh mesh = generate_grid_mesh(ElementKind::hex, 1.0, 2);
  const DiscreteSpace space(mesh, 1, 3);
  const HyperelasticMaterial mat{1.0, 1.5, 0.8};
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(space.num_dofs());
  CHECK(strain_energy(space, zero, mat) == 0.0);
  CHECK(assemble_internal_force(space, zero, mat).norm() == 0.0);
}

TEST_CASE("rigid motions of a free mesh produce no internal force") {
  const Mesh mesh = generate_grid_mesh(ElementKind::hex, 1.0, 2);
  const DiscreteSpace space(mesh, 1, 3);
  const HyperelasticMaterial mat{1.0, 1.2, 0.9};

  // Scale: the force of a comparable-amplitude deforming field.
  const Eigen::VectorXd bent = interpolate_vector(space, [](const Eigen::VectorXd& x) {
    return Eigen::Vector3d(0.2 * x[2] * x[2], 0.0, 0.1 * x[0]);
  });
  const double scale = assemble_internal_force(space, bent, mat).norm();
  CHECK(scale > 0.0);

  const Eigen::Matrix3d Q = rotation(0.5, 1) * rotation(1.1, 2);
  const Eigen::Vector3d shift(0.3, -0.2, 0.05);
  const Eigen::VectorXd rigid = interpolate_vector(space, [&](const Eigen::VectorXd& x) {
    return Eigen::Vector3d(Q * x - x + shift);
  });
  CHECK(strain_energy(space, rigid, mat) < 1e-12 * mat.mu);
  CHECK(assemble_internal_force(space, rigid, mat).norm() < 1e-10 * scale);
}

TEST_CASE("internal force is the gradient of the strain energy") {
  const Mesh mesh = generate_grid_mesh(ElementKind::hex, 1.0, 1);
  for (int P : {1, 2}) {
    CAPTURE(P);
    const DiscreteSpace space(mesh, P, 3);
    const HyperelasticMaterial mat{1.0, 1.4, 0.6};
    const Eigen::VectorXd u = random_coeffs(space.num_dofs(), 0.05, 7u + P);
    const Eigen::VectorXd f = assemble_internal_force(space, u, mat);
    const double fscale = f.cwiseAbs().maxCoeff();

    const double eps = 1e-6;
    double worst = 0.0;
    for (int i = 0; i < space.num_dofs(); ++i) {
      Eigen::VectorXd up = u, um = u;
      up[i] += eps;
      um[i] -= eps;
      const double fd = (strain_energy(space, up, mat) - strain_energy(space, um, mat)) / (2 * eps);
      worst = std::max(worst, std::abs(fd - f[i]));
    }
    CHECK(worst < 1e-6 * fscale);
  }
}

TEST_CASE("linearized stiffness matches finite differences of the force") {
  const Mesh mesh = generate_grid_mesh(ElementKind::hex, 1.0, 1);
  const DiscreteSpace space(mesh, 1, 3);
  const HyperelasticMaterial mat{1.0, 1.4, 0.6};
  const Eigen::VectorXd u0 = random_coeffs(space.num_dofs(), 0.08, 19u);

  const Eigen::MatrixXd K = assemble_linearized_stiffness(space, u0, mat).dense();
  CHECK((K - K.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * K.norm());

  const double eps = 1e-6;
  Eigen::MatrixXd fd(K.rows(), K.cols());
  for (int j = 0; j < K.cols(); ++j) {
    Eigen::VectorXd up = u0, um = u0;
    up[j] += eps;
    um[j] -= eps;
    fd.col(j) = (assemble_internal_force(space, up, mat) -
                 assemble_internal_force(space, um, mat)) /
                (2 * eps);
  }
  CHECK((K - fd).norm() < 1e-6 * K.norm());
}

TEST_CASE("stiffness at zero displacement is the small-strain operator") {
  const Mesh mesh = generate_grid_mesh(ElementKind::hex, 1.0, 2);
  const DiscreteSpace space(mesh, 1, 3);
  const HyperelasticMaterial mat{1.0, 2.0, 1.0};
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(space.num_dofs());
  const SymmetricSparseMatrix K = assemble_linearized_stiffness(space, zero, mat);
  const double scale = K.frobenius_norm();

  // Small-strain elasticity annihilates translations and infinitesimal
  // rotations on a free mesh.
  for (int k = 0; k < 3; ++k) {
    const Eigen::VectorXd t = interpolate_vector(
        space, [&](const Eigen::VectorXd&) { return Eigen::Vector3d::Unit(k).eval(); });
    CHECK(K.apply(t).norm() < 1e-12 * scale);
  }
  Eigen::Matrix3d W = Eigen::Matrix3d::Zero();
  W(0, 1) = 1.0;
  W(1, 0) = -1.0;
  W(1, 2) = 0.5;
  W(2, 1) = -0.5;
  const Eigen::VectorXd spin =
      interpolate_vector(space, [&](const Eigen::VectorXd& x) { return (W * x).eval(); });
  CHECK(K.apply(spin).norm() < 1e-12 * scale);

  // A finite rotation is no longer in the kernel of the linearized operator.
  const Eigen::Matrix3d Q = rotation(0.7, 0);
  const Eigen::VectorXd rot = interpolate_vector(
      space, [&](const Eigen::VectorXd& x) { return (Q * x - x).eval(); });
  CHECK(K.apply(rot).norm() > 1e-3 * scale);
}

TEST_CASE("linearized traction penalty annihilates global linear fields") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  const auto check = [&](const Mesh& mesh, int P) {
    CAPTURE(mesh.dim);
    CAPTURE(P);
    const int d = mesh.dim;
    const DiscreteSpace space(mesh, P, d);
    const HyperelasticMaterial mat{1.3, 0.9, 1.1};
    const SymmetricSparseMatrix G = assemble_linearized_interface_mass(space, mat);
    const double scale = G.frobenius_norm();
    CHECK(scale > 0.0);

    Eigen::MatrixXd A(d, d);
    Eigen::VectorXd b(d);
    for (int i = 0; i < d; ++i) {
      b[i] = unit(rng);
      for (int j = 0; j < d; ++j) A(i, j) = unit(rng);
    }
    const Eigen::VectorXd q = interpolate_vector(
        space, [&](const Eigen::VectorXd& x) { return (A * x + b).eval(); });
    CHECK(G.apply(q).norm() <= 1e-10 * scale * q.norm());
  };

  check(generate_grid_mesh(ElementKind::quad, 1.0, 3), 2);
  check(generate_grid_mesh(ElementKind::triangle, 1.0, 3), 1);
  check(generate_grid_mesh(ElementKind::hex, 1.0, 2), 1);
  check(generate_grid_mesh(ElementKind::hex, 1.0, 2), 2);
}

TEST_CASE("single-facet penalty block matches a hand-built Gram matrix") {
  // Keep two face-sharing hexes of a 2x2x2 grid, leaving exactly one
  // interior facet.
  Mesh mesh = generate_grid_mesh(ElementKind::hex, 1.0, 2);
  const InteriorFacet seed = mesh.interior_facets[0];
  const std::vector<MeshElement> pair{mesh.elements[seed.left], mesh.elements[seed.right]};
  mesh.elements = pair;
  mesh.build_facets(nullptr);
  REQUIRE(mesh.interior_facets.size() == 1);

  const DiscreteSpace space(mesh, 1, 3);
  const HyperelasticMaterial mat{2.0, 1.3, 0.7};
  const Eigen::MatrixXd G = assemble_linearized_interface_mass(space, mat).dense();

  // Independent assembly: contract the four-index material tensor
  // C_ijkl = lambda d_ij d_kl + mu (d_ik d_jl + d_il d_jk) against the basis
  // strains at every facet quadrature point and form the Gram of the
  // resulting jump tractions.
  const InteriorFacet& facet = mesh.interior_facets[0];
  const QuadratureRule rule = facet_rule(ElementKind::hex, 4);
  Eigen::MatrixXd hand = Eigen::MatrixXd::Zero(space.num_dofs(), space.num_dofs());
  const double coeff =
      mat.rho0 / (mat.stiffness_norm() * mat.stiffness_norm());
  for (int q = 0; q < rule.num_points(); ++q) {
    const FacetPoint fp =
        facet_point(mesh, facet.left, facet.left_face, rule.points.row(q).transpose());
    Eigen::MatrixXd jump = Eigen::MatrixXd::Zero(3, space.num_dofs());
    for (const auto& [elem, sign] :
         {std::pair{facet.left, 1.0}, std::pair{facet.right, -1.0}}) {
      const ShapeBasis& basis = shape_basis(ElementKind::hex, 1);
      const Eigen::VectorXd xi = map_to_reference(mesh, elem, fp.x);
      Eigen::VectorXd values;
      Eigen::MatrixXd grads;
      basis.eval(xi, values, grads);
      const Eigen::MatrixXd gphys = grads * geometry_jacobian(mesh, elem, xi).inverse();
      const std::vector<int>& sdofs = space.cell_scalar_dofs(elem);
      for (int a = 0; a < basis.size(); ++a)
        for (int k = 0; k < 3; ++k) {
          Eigen::Matrix3d eps = Eigen::Matrix3d::Zero();
          for (int j = 0; j < 3; ++j) {
            eps(k, j) += 0.5 * gphys(a, j);
            eps(j, k) += 0.5 * gphys(a, j);
          }
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
              for (int m = 0; m < 3; ++m)
                for (int l = 0; l < 3; ++l) {
                  const double C = mat.lambda * (i == j) * (m == l) +
                                   mat.mu * ((i == m) * (j == l) + (i == l) * (j == m));
                  jump(i, sdofs[a] * 3 + k) += sign * C * eps(m, l) * fp.normal[j];
                }
        }
    }
    hand.noalias() += rule.weights[q] * fp.area_element * coeff * jump.transpose() * jump;
  }
  CHECK((G - hand).cwiseAbs().maxCoeff() < 1e-12 * hand.cwiseAbs().maxCoeff());

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  CHECK(es.eigenvalues().maxCoeff() > 0.0);
  CHECK(es.eigenvalues().minCoeff() > -1e-12 * es.eigenvalues().maxCoeff());
}

TEST_CASE("scaled mass reduces to the plain vector mass at c = 0") {
  const Mesh mesh = generate_grid_mesh(ElementKind::hex, 1.0, 2);
  const DiscreteSpace space(mesh, 1, 3);
  const HyperelasticMaterial mat = HyperelasticMaterial::from_youngs(2700.0, 73e9, 0.33);

  const Eigen::MatrixXd M0 = build_scaled_mass_linearized(space, mat, 0.0).dense();
  // Row sums of the consistent vector mass reproduce rho0 * volume per
  // component.
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(space.num_dofs());
  CHECK(ones.dot(M0 * ones) == doctest::Approx(3.0 * 2700.0).epsilon(1e-10));

  const Eigen::MatrixXd M5 = build_scaled_mass_linearized(space, mat, 5.0).dense();
  const Eigen::MatrixXd diff = M5 - M0;
  CHECK(diff.norm() > 0.0);
  // The penalty term itself is annihilated by constants, so total mass is
  // preserved by the scaling.
  CHECK(ones.dot(M5 * ones) == doctest::Approx(3.0 * 2700.0).epsilon(1e-10));
}
