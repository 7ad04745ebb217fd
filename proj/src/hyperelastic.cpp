#include "vcmass/hyperelastic.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Dense>

#include "vcmass/quadrature.hpp"
#include "vcmass/scaling.hpp"

namespace vcmass {

namespace {

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

void require_vector_space(const DiscreteSpace& space, const char* op) {
  if (space.components() != space.mesh().dim)
    throw std::invalid_argument(std::string(op) + ": space components must equal mesh dimension");
}

// Displacement gradient at one quadrature point: (grad u)_kj = sum_a
// u[a,k] d(N_a)/dX_j, from the element coefficient block (n x d) and the
// physical basis gradients (n x d).
Eigen::MatrixXd gradient_at(const Eigen::MatrixXd& coeffs, const Eigen::MatrixXd& gphys) {
  return coeffs.transpose() * gphys;
}

// C : A for symmetric A: lambda tr(A) I + 2 mu A.
Eigen::MatrixXd apply_material_tensor(const Eigen::MatrixXd& A, const HyperelasticMaterial& mat) {
  const int d = static_cast<int>(A.rows());
  return mat.lambda * A.trace() * Eigen::MatrixXd::Identity(d, d) + 2.0 * mat.mu * A;
}

}  // namespace

HyperelasticMaterial HyperelasticMaterial::from_youngs(double rho0, double E, double nu) {
  if (E <= 0.0 || nu <= -1.0 || nu >= 0.5)
    throw std::invalid_argument("from_youngs: need E > 0 and nu in (-1, 0.5)");
  HyperelasticMaterial out;
  out.rho0 = rho0;
  out.lambda = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  out.mu = E / (2.0 * (1.0 + nu));
  return out;
}

double HyperelasticMaterial::stiffness_norm() const { return std::max(mu, bulk_modulus()); }

DeformationState stress_state(const Eigen::MatrixXd& grad_u, const HyperelasticMaterial& mat) {
  if (grad_u.rows() != grad_u.cols()) throw std::invalid_argument("stress_state: square gradient");
  const int d = static_cast<int>(grad_u.rows());
  DeformationState st;
  st.grad_u = grad_u;
  st.F = Eigen::MatrixXd::Identity(d, d) + grad_u;
  st.E = 0.5 * (grad_u + grad_u.transpose() + grad_u.transpose() * grad_u);
  st.S = apply_material_tensor(st.E, mat);
  st.P = st.F * st.S;
  return st;
}

Eigen::MatrixXd linear_strain(const Eigen::MatrixXd& grad_u) {
  return 0.5 * (grad_u + grad_u.transpose());
}

double strain_energy(const DiscreteSpace& space, const Eigen::VectorXd& u,
                     const HyperelasticMaterial& mat) {
  require_vector_space(space, "strain_energy");
  if (u.size() != space.num_dofs())
    throw std::invalid_argument("strain_energy: coefficient count mismatch");
  const Mesh& mesh = space.mesh();
  const int d = mesh.dim;
  double energy = 0.0;
  std::unordered_map<int, EvaluatedRule> cache;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementKind kind = mesh.elements[e].kind;
    auto [it, inserted] = cache.try_emplace(static_cast<int>(kind));
    if (inserted) it->second = evaluate_volume_rule(kind, space.degree(), 2 * space.degree() + 2);
    const EvaluatedRule& ev = it->second;
    const std::vector<int>& sdofs = space.cell_scalar_dofs(e);
    const int n = static_cast<int>(sdofs.size());
    Eigen::MatrixXd coeffs(n, d);
    for (int a = 0; a < n; ++a)
      for (int k = 0; k < d; ++k) coeffs(a, k) = u[sdofs[a] * d + k];
    for (int q = 0; q < ev.rule.num_points(); ++q) {
      const Eigen::MatrixXd J = geometry_jacobian(mesh, e, ev.rule.points.row(q).transpose());
      const Eigen::MatrixXd gphys = ev.grads[q] * J.inverse();
      const DeformationState st = stress_state(gradient_at(coeffs, gphys), mat);
      const double w = ev.rule.weights[q] * J.determinant();
      energy += 0.5 * w * (st.S.array() * st.E.array()).sum();
    }
  }
  return energy;
}

Eigen::VectorXd assemble_internal_force(const DiscreteSpace& space, const Eigen::VectorXd& u,
                                        const HyperelasticMaterial& mat) {
  require_vector_space(space, "assemble_internal_force");
  if (u.size() != space.num_dofs())
    throw std::invalid_argument("assemble_internal_force: coefficient count mismatch");
  const Mesh& mesh = space.mesh();
  const int d = mesh.dim;
  Eigen::VectorXd force = Eigen::VectorXd::Zero(space.num_dofs());
  std::unordered_map<int, EvaluatedRule> cache;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementKind kind = mesh.elements[e].kind;
    auto [it, inserted] = cache.try_emplace(static_cast<int>(kind));
    if (inserted) it->second = evaluate_volume_rule(kind, space.degree(), 2 * space.degree() + 2);
    const EvaluatedRule& ev = it->second;
    const std::vector<int>& sdofs = space.cell_scalar_dofs(e);
    const int n = static_cast<int>(sdofs.size());
    Eigen::MatrixXd coeffs(n, d);
    for (int a = 0; a < n; ++a)
      for (int k = 0; k < d; ++k) coeffs(a, k) = u[sdofs[a] * d + k];
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(n, d);
    for (int q = 0; q < ev.rule.num_points(); ++q) {
      const Eigen::MatrixXd J = geometry_jacobian(mesh, e, ev.rule.points.row(q).transpose());
      const Eigen::MatrixXd gphys = ev.grads[q] * J.inverse();
      const DeformationState st = stress_state(gradient_at(coeffs, gphys), mat);
      const double w = ev.rule.weights[q] * J.determinant();
      // f[a,k] += w P(k,:)·g_a, i.e. the ∇v : P pairing for v = N_a e_k.
      local.noalias() += w * gphys * st.P.transpose();
    }
    for (int a = 0; a < n; ++a)
      for (int k = 0; k < d; ++k) force[sdofs[a] * d + k] += local(a, k);
  }
  return force;
}

SymmetricSparseMatrix assemble_linearized_interface_mass(
    const DiscreteSpace& space, const HyperelasticMaterial& mat,
    const std::function<double(double)>& facet_weight) {
  require_vector_space(space, "assemble_linearized_interface_mass");
  const Mesh& mesh = space.mesh();
  const int d = mesh.dim;
  const int P = space.degree();
  const double norm = mat.stiffness_norm();
  const double coeff = mat.rho0 / (norm * norm);
  SymmetricSparseMatrix G(space.num_dofs());

  // Per scalar basis function a, the d x d block T_a with column k holding
  // the linearized traction (C:ε(N_a e_k)) n = lambda g_a[k] n
  // + mu ((g_a·n) e_k + n[k] g_a), accumulated with the side's sign.
  struct TractionBlocks {
    std::vector<int> scalar_dofs;
    std::vector<Eigen::MatrixXd> blocks;
  };
  const auto process_side = [&](int e, const Eigen::VectorXd& x, const Eigen::VectorXd& n,
                                double sign, TractionBlocks& tb) {
    const ShapeBasis& basis = shape_basis(mesh.elements[e].kind, P);
    const Eigen::VectorXd xi = map_to_reference(mesh, e, x);
    Eigen::VectorXd values;
    Eigen::MatrixXd grads;
    basis.eval(xi, values, grads);
    const Eigen::MatrixXd gphys = grads * geometry_jacobian(mesh, e, xi).inverse();
    const std::vector<int>& sdofs = space.cell_scalar_dofs(e);
    for (int a = 0; a < basis.size(); ++a) {
      const int dof = sdofs[a];
      int pos = -1;
      for (int k = 0; k < static_cast<int>(tb.scalar_dofs.size()); ++k)
        if (tb.scalar_dofs[k] == dof) pos = k;
      if (pos < 0) {
        tb.scalar_dofs.push_back(dof);
        tb.blocks.push_back(Eigen::MatrixXd::Zero(d, d));
        pos = static_cast<int>(tb.scalar_dofs.size()) - 1;
      }
      const Eigen::VectorXd g = gphys.row(a).transpose();
      const double gn = g.dot(n);
      Eigen::MatrixXd block = mat.lambda * n * g.transpose() + mat.mu * g * n.transpose();
      block.diagonal().array() += mat.mu * gn;
      tb.blocks[pos] += sign * block;
    }
  };

  const auto accumulate = [&](const TractionBlocks& tb, double w, std::vector<int>& dofs,
                              Eigen::MatrixXd& local) {
    const int m = static_cast<int>(tb.scalar_dofs.size());
    if (dofs.empty()) {
      dofs = tb.scalar_dofs;
      local = Eigen::MatrixXd::Zero(m * d, m * d);
    }
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        local.block(a * d, b * d, d, d).noalias() +=
            w * tb.blocks[a].transpose() * tb.blocks[b];
  };

  const auto scatter = [&](const std::vector<int>& dofs, const Eigen::MatrixXd& local) {
    const int m = static_cast<int>(dofs.size());
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const int i = dofs[a] * d + k;
            const int j = dofs[b] * d + l;
            if (i <= j) G.add(i, j, local(a * d + k, b * d + l));
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
      TractionBlocks tb;
      process_side(facet.left, fp.x, fp.normal, +1.0, tb);
      process_side(facet.right, fp.x, fp.normal, -1.0, tb);
      accumulate(tb, rule.weights[q] * fp.area_element * coeff * weight, dofs, local);
    }
    scatter(dofs, local);
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
      TractionBlocks tb;
      process_side(facet.element, fp.x, fp.normal, +1.0, tb);
      accumulate(tb, rule.weights[q] * fp.area_element * coeff * weight, dofs, local);
    }
    scatter(dofs, local);
  }

  G.finalize();
  return G;
}

SymmetricSparseMatrix build_scaled_mass_linearized(const DiscreteSpace& space,
                                                   const HyperelasticMaterial& mat, double c) {
  if (c < 0.0)
    throw std::invalid_argument("build_scaled_mass_linearized: c must be non-negative");
  SymmetricSparseMatrix M = assemble_mass(space, MaterialScalar{mat.rho0, 1.0});
  if (c == 0.0) return M;
  const int dim = space.mesh().dim;
  const int P = space.degree();
  const auto weight = [&](double h) {
    return estimate_beta(c, dim, P, h, FieldKind::vector_field).value;
  };
  const SymmetricSparseMatrix G = assemble_linearized_interface_mass(space, mat, weight);
  return matrix_sum(M, G, 1.0);
}

SymmetricSparseMatrix assemble_linearized_stiffness(const DiscreteSpace& space,
                                                    const Eigen::VectorXd& u0,
                                                    const HyperelasticMaterial& mat) {
  require_vector_space(space, "assemble_linearized_stiffness");
  if (u0.size() != space.num_dofs())
    throw std::invalid_argument("assemble_linearized_stiffness: coefficient count mismatch");
  const Mesh& mesh = space.mesh();
  const int d = mesh.dim;
  SymmetricSparseMatrix K(space.num_dofs());
  std::unordered_map<int, EvaluatedRule> cache;
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementKind kind = mesh.elements[e].kind;
    auto [it, inserted] = cache.try_emplace(static_cast<int>(kind));
    if (inserted) it->second = evaluate_volume_rule(kind, space.degree(), 2 * space.degree() + 2);
    const EvaluatedRule& ev = it->second;
    const std::vector<int>& sdofs = space.cell_scalar_dofs(e);
    const int n = static_cast<int>(sdofs.size());
    Eigen::MatrixXd coeffs(n, d);
    for (int a = 0; a < n; ++a)
      for (int k = 0; k < d; ++k) coeffs(a, k) = u0[sdofs[a] * d + k];
    Eigen::MatrixXd local = Eigen::MatrixXd::Zero(n * d, n * d);
    for (int q = 0; q < ev.rule.num_points(); ++q) {
      const Eigen::MatrixXd J = geometry_jacobian(mesh, e, ev.rule.points.row(q).transpose());
      const Eigen::MatrixXd gphys = ev.grads[q] * J.inverse();
      const DeformationState st = stress_state(gradient_at(coeffs, gphys), mat);
      const double w = ev.rule.weights[q] * J.determinant();
      // The three linearization integrals collapse to the standard
      // geometric-plus-material tangent at u0. With g_a the basis gradient
      // and f_k row k of F:
      //   B[(a,k),(b,l)] = δ_kl g_a·S g_b + λ (f_k·g_a)(f_l·g_b)
      //                  + μ (f_k·f_l)(g_a·g_b) + μ (f_k·g_b)(f_l·g_a).
      const Eigen::MatrixXd GS = gphys * st.S * gphys.transpose();  // g_a·S g_b
      const Eigen::MatrixXd FG = gphys * st.F.transpose();          // (a,k) -> f_k·g_a
      const Eigen::MatrixXd FF = st.F * st.F.transpose();           // f_k·f_l
      const Eigen::MatrixXd GG = gphys * gphys.transpose();         // g_a·g_b
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) {
              double v = mat.lambda * FG(a, k) * FG(b, l) + mat.mu * FF(k, l) * GG(a, b) +
                         mat.mu * FG(b, k) * FG(a, l);
              if (k == l) v += GS(a, b);
              local(a * d + k, b * d + l) += w * v;
            }
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            const int i = sdofs[a] * d + k;
            const int j = sdofs[b] * d + l;
            if (i <= j) K.add(i, j, local(a * d + k, b * d + l));
          }
  }
  K.finalize();
  return K;
}

}  // namespace vcmass
