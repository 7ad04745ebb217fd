#include "vcmass/assembly.hpp"

#include <cmath>
#include <unordered_map>

#include <Eigen/Dense>

#include "vcmass/quadrature.hpp"
#include "vcmass/scaling.hpp"

namespace vcmass {

namespace {

// Reference basis data evaluated once per quadrature rule.
struct EvaluatedRule {
  QuadratureRule rule;
  std::vector<Eigen::VectorXd> values;
  std::vector<Eigen::MatrixXd> grads;
};

EvaluatedRule evaluate_volume_rule(ElementKind kind, int degree, int quad_degree) {
  EvaluatedRule out;
  out.rule = volume_rule(kind, quad_degree);
  const ShapeBasis& basis = shape_basis(kind, degree);
  out.values.resize(out.rule.num_points());
  out.grads.resize(out.rule.num_points());
  for (int q = 0; q < out.rule.num_points(); ++q)
    basis.eval(out.rule.points.row(q).transpose(), out.values[q], out.grads[q]);
  return out;
}

void scatter_symmetric(SymmetricSparseMatrix& target, const std::vector<int>& dofs,
                       const Eigen::MatrixXd& local) {
  const int n = static_cast<int>(dofs.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (dofs[a] <= dofs[b]) target.add(dofs[a], dofs[b], local(a, b));
}

// Jump of the normal traction T ∂_n(·) across one facet quadrature point,
// expressed over the union of both elements' scalar DOFs.
struct FacetJump {
  std::vector<int> dofs;
  Eigen::VectorXd row;
};

}  // namespace

SymmetricSparseMatrix assemble_mass(const DiscreteSpace& space, const MaterialScalar& mat) {
  const Mesh& mesh = space.mesh();
  const int m = space.components();
  SymmetricSparseMatrix M(space.num_dofs());
  std::unordered_map<int, EvaluatedRule> cache;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementKind kind = mesh.elements[e].kind;
    auto [it, inserted] = cache.try_emplace(static_cast<int>(kind));
    if (inserted) it->second = evaluate_volume_rule(kind, space.degree(), 2 * space.degree() + 2);
    const EvaluatedRule& ev = it->second;

    const std::vector<int>& dofs = space.cell_scalar_dofs(e);
    const int n = static_cast<int>(dofs.size());
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(n, n);
    for (int q = 0; q < ev.rule.num_points(); ++q) {
      const Eigen::MatrixXd J = geometry_jacobian(mesh, e, ev.rule.points.row(q).transpose());
      const double w = ev.rule.weights[q] * J.determinant() * mat.rho;
      local.noalias() += w * ev.values[q] * ev.values[q].transpose();
    }
    // Vector spaces carry the same scalar mass on every component diagonal.
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (dofs[a] > dofs[b]) continue;
        for (int c = 0; c < m; ++c) M.add(dofs[a] * m + c, dofs[b] * m + c, local(a, b));
      }
  }
  M.finalize();
  return M;
}

SymmetricSparseMatrix assemble_stiffness(const DiscreteSpace& space, const MaterialScalar& mat) {
  if (space.components() != 1)
    throw std::invalid_argument("assemble_stiffness: scalar spaces only");
  const Mesh& mesh = space.mesh();
  SymmetricSparseMatrix K(space.num_dofs());
  std::unordered_map<int, EvaluatedRule> cache;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementKind kind = mesh.elements[e].kind;
    auto [it, inserted] = cache.try_emplace(static_cast<int>(kind));
    if (inserted) it->second = evaluate_volume_rule(kind, space.degree(), 2 * space.degree() + 2);
    const EvaluatedRule& ev = it->second;
    const std::vector<int>& dofs = space.cell_scalar_dofs(e);
    const int n = static_cast<int>(dofs.size());
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(n, n);
    for (int q = 0; q < ev.rule.num_points(); ++q) {
      const Eigen::MatrixXd J = geometry_jacobian(mesh, e, ev.rule.points.row(q).transpose());
      const Eigen::MatrixXd gphys = ev.grads[q] * J.inverse();
      const double w = ev.rule.weights[q] * J.determinant() * mat.T;
      local.noalias() += w * gphys * gphys.transpose();
    }
    scatter_symmetric(K, dofs, local);
  }
  K.finalize();
  return K;
}

SymmetricSparseMatrix assemble_interface_mass(
    const DiscreteSpace& space, const MaterialScalar& mat,
    const std::function<double(double)>& facet_weight) {
  if (space.components() != 1)
    throw std::invalid_argument("assemble_interface_mass: scalar spaces only");
  const Mesh& mesh = space.mesh();
  const int P = space.degree();
  const double coeff = mat.rho / (mat.T * mat.T);
  SymmetricSparseMatrix G(space.num_dofs());

  const auto process_side = [&](int e, const Eigen::VectorXd& x, const Eigen::VectorXd& n,
                                double sign, FacetJump& jump) {
    const ShapeBasis& basis = shape_basis(mesh.elements[e].kind, P);
    const Eigen::VectorXd xi = map_to_reference(mesh, e, x);
    Eigen::VectorXd values;
    Eigen::MatrixXd grads;
    basis.eval(xi, values, grads);
    const Eigen::MatrixXd gphys = grads * geometry_jacobian(mesh, e, xi).inverse();
    const std::vector<int>& dofs = space.cell_scalar_dofs(e);
    for (int a = 0; a < basis.size(); ++a) {
      const int dof = dofs[a];
      int pos = -1;
      for (int k = 0; k < static_cast<int>(jump.dofs.size()); ++k)
        if (jump.dofs[k] == dof) pos = k;
      if (pos < 0) {
        jump.dofs.push_back(dof);
        jump.row.conservativeResize(jump.dofs.size());
        jump.row[jump.dofs.size() - 1] = 0.0;
        pos = static_cast<int>(jump.dofs.size()) - 1;
      }
      jump.row[pos] += sign * mat.T * gphys.row(a).dot(n);
    }
  };

  for (const InteriorFacet& facet : mesh.interior_facets) {
    const ElementKind kind = mesh.elements[facet.left].kind;
    const QuadratureRule rule = facet_rule(kind, 2 * P + 2);
    const double weight = facet_weight ? facet_weight(facet_mean_diameter(mesh, facet)) : 1.0;
    std::vector<int> dofs;
    Eigen::MatrixXd local;
    for (int q = 0; q < rule.num_points(); ++q) {
      const FacetPoint fp = facet_point(mesh, facet.left, facet.left_face,
                                        rule.points.row(q).transpose());
      FacetJump jump;
      jump.row.resize(0);
      process_side(facet.left, fp.x, fp.normal, +1.0, jump);
      process_side(facet.right, fp.x, fp.normal, -1.0, jump);
      if (q == 0) {
        dofs = jump.dofs;
        local = Eigen::MatrixXd::Zero(dofs.size(), dofs.size());
      }
      const double w = rule.weights[q] * fp.area_element * coeff * weight;
      local.noalias() += w * jump.row * jump.row.transpose();
    }
    scatter_symmetric(G, dofs, local);
  }

  for (const BoundaryFacet& facet : mesh.boundary_facets) {
    if (facet.tag != BoundaryTag::neumann) continue;
    const ElementKind kind = mesh.elements[facet.element].kind;
    const QuadratureRule rule = facet_rule(kind, 2 * P + 2);
    const double weight =
        facet_weight ? facet_weight(element_diameter(mesh, facet.element)) : 1.0;
    std::vector<int> dofs;
    Eigen::MatrixXd local;
    for (int q = 0; q < rule.num_points(); ++q) {
      const FacetPoint fp =
          facet_point(mesh, facet.element, facet.face, rule.points.row(q).transpose());
      FacetJump jump;
      jump.row.resize(0);
      process_side(facet.element, fp.x, fp.normal, +1.0, jump);
      if (q == 0) {
        dofs = jump.dofs;
        local = Eigen::MatrixXd::Zero(dofs.size(), dofs.size());
      }
      const double w = rule.weights[q] * fp.area_element * coeff * weight;
      local.noalias() += w * jump.row * jump.row.transpose();
    }
    scatter_symmetric(G, dofs, local);
  }

  G.finalize();
  return G;
}

Eigen::VectorXd assemble_load(const DiscreteSpace& space, const LoadAssembler& load, double t) {
  if (space.components() != 1)
    throw std::invalid_argument("assemble_load: scalar spaces only");
  const Mesh& mesh = space.mesh();
  const int P = space.degree();
  const double coeff = load.material.rho / (load.material.T * load.material.T);
  Eigen::VectorXd F = Eigen::VectorXd::Zero(space.num_dofs());

  for (const BoundaryFacet& facet : mesh.boundary_facets) {
    if (facet.tag != BoundaryTag::neumann) continue;
    const int e = facet.element;
    const ElementKind kind = mesh.elements[e].kind;
    const ShapeBasis& basis = shape_basis(kind, P);
    const QuadratureRule rule = facet_rule(kind, 2 * P + 2);
    const double beta =
        estimate_beta(load.c, mesh.dim, P, element_diameter(mesh, e), FieldKind::scalar_field)
            .value;
    const std::vector<int>& dofs = space.cell_scalar_dofs(e);
    for (int q = 0; q < rule.num_points(); ++q) {
      const Eigen::VectorXd s = rule.points.row(q).transpose();
      const FacetPoint fp = facet_point(mesh, e, facet.face, s);
      const Eigen::VectorXd xi = face_to_reference(kind, facet.face, s);
      Eigen::VectorXd values;
      Eigen::MatrixXd grads;
      basis.eval(xi, values, grads);
      const Eigen::MatrixXd gphys = grads * geometry_jacobian(mesh, e, xi).inverse();
      const double w = rule.weights[q] * fp.area_element;
      const double gv = load.g ? load.g(t, fp.x, fp.normal) : 0.0;
      const double gddv = load.gdd ? load.gdd(t, fp.x, fp.normal) : 0.0;
      for (int a = 0; a < basis.size(); ++a) {
        double fa = -gv * values[a];
        if (beta != 0.0 && gddv != 0.0)
          fa -= beta * coeff * gddv * load.material.T * gphys.row(a).dot(fp.normal);
        F[dofs[a]] += w * fa;
      }
    }
  }
  return F;
}

double l2_error(const DiscreteSpace& space, const Eigen::VectorXd& coeffs,
                const std::function<double(const Eigen::VectorXd&)>& exact) {
  if (space.components() != 1)
    throw std::invalid_argument("l2_error: scalar spaces only");
  if (coeffs.size() != space.num_dofs())
    throw std::invalid_argument("l2_error: coefficient count mismatch");
  const Mesh& mesh = space.mesh();
  double err2 = 0.0;
  std::unordered_map<int, EvaluatedRule> cache;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementKind kind = mesh.elements[e].kind;
    auto [it, inserted] = cache.try_emplace(static_cast<int>(kind));
    if (inserted) it->second = evaluate_volume_rule(kind, space.degree(), 2 * space.degree() + 2);
    const EvaluatedRule& ev = it->second;
    const std::vector<int>& dofs = space.cell_scalar_dofs(e);
    for (int q = 0; q < ev.rule.num_points(); ++q) {
      const Eigen::VectorXd xi = ev.rule.points.row(q).transpose();
      const Eigen::VectorXd x = map_to_physical(mesh, e, xi);
      const double detj = geometry_jacobian(mesh, e, xi).determinant();
      double uh = 0.0;
      for (int a = 0; a < static_cast<int>(dofs.size()); ++a)
        uh += coeffs[dofs[a]] * ev.values[q][a];
      const double diff = uh - exact(x);
      err2 += ev.rule.weights[q] * detj * diff * diff;
    }
  }
  return std::sqrt(err2);
}

}  // namespace vcmass
