#include "vcmass/shape.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "vcmass/errors.hpp"

namespace vcmass {

namespace {

// Values and derivatives of the degree-P Lagrange polynomials on [0,1] with
// nodes at i/P.
void lagrange_line(int P, double x, Eigen::VectorXd& vals, Eigen::VectorXd& ders) {
  const int n = P + 1;
  vals.resize(n);
  ders.resize(n);
  for (int i = 0; i < n; ++i) {
    const double xi = static_cast<double>(i) / P;
    double v = 1.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double xj = static_cast<double>(j) / P;
      v *= (x - xj) / (xi - xj);
    }
    vals[i] = v;
    double d = 0.0;
    for (int k = 0; k < n; ++k) {
      if (k == i) continue;
      const double xk = static_cast<double>(k) / P;
      double term = 1.0 / (xi - xk);
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double xj = static_cast<double>(j) / P;
        term *= (x - xj) / (xi - xj);
      }
      d += term;
    }
    ders[i] = d;
  }
}

// Value and lambda-derivative of f_m(l) = prod_{s<m} (P*l - s)/(m - s),
// the factor entering the equispaced simplex basis. f_0 = 1.
std::pair<double, double> simplex_factor(int m, int P, double lambda) {
  double value = 1.0;
  for (int s = 0; s < m; ++s) value *= (P * lambda - s) / (m - s);
  double der = 0.0;
  for (int s = 0; s < m; ++s) {
    double term = static_cast<double>(P) / (m - s);
    for (int r = 0; r < m; ++r) {
      if (r == s) continue;
      term *= (P * lambda - r) / (m - r);
    }
    der += term;
  }
  return {value, der};
}

bool lattice_supported(ElementKind kind, int degree) {
  const int max = kind == ElementKind::hex ? 2 : 4;
  return degree >= 1 && degree <= max;
}

}  // namespace

ShapeBasis::ShapeBasis(ElementKind kind, int degree) : kind_(kind), degree_(degree) {
  if (!lattice_supported(kind, degree))
    throw UnsupportedConfigError("shape_basis: " + to_string(kind) + " of degree " +
                                 std::to_string(degree) + " is not supported");
  const int P = degree;
  const int dim = kind_dimension(kind);

  switch (kind) {
    case ElementKind::interval:
      nodes_.resize(P + 1, 1);
      for (int i = 0; i <= P; ++i) nodes_(i, 0) = static_cast<double>(i) / P;
      break;
    case ElementKind::quad:
      nodes_.resize((P + 1) * (P + 1), 2);
      for (int j = 0, r = 0; j <= P; ++j)
        for (int i = 0; i <= P; ++i, ++r)
          nodes_.row(r) << static_cast<double>(i) / P, static_cast<double>(j) / P;
      break;
    case ElementKind::hex:
      nodes_.resize((P + 1) * (P + 1) * (P + 1), 3);
      for (int k = 0, r = 0; k <= P; ++k)
        for (int j = 0; j <= P; ++j)
          for (int i = 0; i <= P; ++i, ++r)
            nodes_.row(r) << static_cast<double>(i) / P, static_cast<double>(j) / P,
                static_cast<double>(k) / P;
      break;
    case ElementKind::triangle:
      nodes_.resize((P + 1) * (P + 2) / 2, 2);
      for (int j = 0, r = 0; j <= P; ++j)
        for (int i = 0; i + j <= P; ++i, ++r)
          nodes_.row(r) << static_cast<double>(i) / P, static_cast<double>(j) / P;
      break;
  }

  // Classify lattice nodes geometrically against vertices, then edges, then
  // faces; whatever remains is interior to the cell.
  const Eigen::MatrixXd& corners = reference_corners(kind);
  const auto edges = kind_edges(kind);
  const double tol = 1e-12;
  entities_.resize(size());
  int cell_count = 0;
  for (int r = 0; r < size(); ++r) {
    const Eigen::VectorXd xi = nodes_.row(r).transpose();
    NodeEntity ent{EntityType::cell, 0, -1};
    bool found = false;
    for (int v = 0; v < corners.rows() && !found; ++v) {
      if ((xi - corners.row(v).transpose()).norm() < tol) {
        ent = {EntityType::vertex, v, 0};
        found = true;
      }
    }
    for (int ed = 0; ed < static_cast<int>(edges.size()) && !found; ++ed) {
      const Eigen::VectorXd a = corners.row(edges[ed][0]).transpose();
      const Eigen::VectorXd b = corners.row(edges[ed][1]).transpose();
      const Eigen::VectorXd dir = b - a;
      const double t = (xi - a).dot(dir) / dir.squaredNorm();
      if (t > tol && t < 1.0 - tol && (xi - a - t * dir).norm() < tol) {
        ent = {EntityType::edge, ed, static_cast<int>(std::lround(t * P)) - 1};
        found = true;
      }
    }
    if (!found && dim == 3) {
      for (int f = 0; f < kind_face_count(kind) && !found; ++f) {
        // Hex faces are axis-aligned: one coordinate pinned at 0 or 1.
        const Eigen::VectorXd c0 = corners.row(face_vertices(kind, f)[0]).transpose();
        const Eigen::MatrixXd t = face_reference_tangents(kind, f);
        int axis = 0;
        for (int d = 0; d < 3; ++d)
          if (std::abs(t(d, 0)) < tol && std::abs(t(d, 1)) < tol) axis = d;
        if (std::abs(xi[axis] - c0[axis]) < tol) {
          ent = {EntityType::face, f, 0};
          found = true;
        }
      }
    }
    if (!found) ent = {EntityType::cell, 0, cell_count++};
    entities_[r] = ent;
  }

  // A face closure is every node whose classification entity lies on the
  // face: the face itself, its edges and its vertices.
  face_closure_.resize(kind_face_count(kind));
  for (int f = 0; f < kind_face_count(kind); ++f) {
    const auto fv = face_vertices(kind, f);
    for (int r = 0; r < size(); ++r) {
      const NodeEntity& ent = entities_[r];
      bool on_face = false;
      switch (ent.type) {
        case EntityType::vertex:
          on_face = std::find(fv.begin(), fv.end(), ent.index) != fv.end();
          break;
        case EntityType::edge: {
          const auto ev = edges[ent.index];
          on_face = std::find(fv.begin(), fv.end(), ev[0]) != fv.end() &&
                    std::find(fv.begin(), fv.end(), ev[1]) != fv.end();
          break;
        }
        case EntityType::face:
          on_face = ent.index == f;
          break;
        case EntityType::cell:
          break;
      }
      if (on_face) face_closure_[f].push_back(r);
    }
  }
}

void ShapeBasis::eval(const Eigen::VectorXd& xi, Eigen::VectorXd& values,
                      Eigen::MatrixXd& grads) const {
  const int P = degree_;
  values.resize(size());
  grads.resize(size(), kind_dimension(kind_));

  if (kind_ == ElementKind::triangle) {
    // Barycentric product basis on the equispaced lattice. For the node with
    // lattice index (i,j) the multi-index over (l0,l1,l2) is (P-i-j, i, j).
    const double l0 = 1.0 - xi[0] - xi[1], l1 = xi[0], l2 = xi[1];
    for (int r = 0; r < size(); ++r) {
      const int i = static_cast<int>(std::lround(nodes_(r, 0) * P));
      const int j = static_cast<int>(std::lround(nodes_(r, 1) * P));
      const auto [f0, d0] = simplex_factor(P - i - j, P, l0);
      const auto [f1, d1] = simplex_factor(i, P, l1);
      const auto [f2, d2] = simplex_factor(j, P, l2);
      values[r] = f0 * f1 * f2;
      // dl0/dx = dl0/dy = -1, dl1/dx = 1, dl2/dy = 1.
      grads(r, 0) = -d0 * f1 * f2 + f0 * d1 * f2;
      grads(r, 1) = -d0 * f1 * f2 + f0 * f1 * d2;
    }
    return;
  }

  Eigen::VectorXd vx, dx, vy, dy, vz, dz;
  lagrange_line(P, xi[0], vx, dx);
  if (kind_ != ElementKind::interval) lagrange_line(P, xi[1], vy, dy);
  if (kind_ == ElementKind::hex) lagrange_line(P, xi[2], vz, dz);

  for (int r = 0; r < size(); ++r) {
    const int i = static_cast<int>(std::lround(nodes_(r, 0) * P));
    switch (kind_) {
      case ElementKind::interval:
        values[r] = vx[i];
        grads(r, 0) = dx[i];
        break;
      case ElementKind::quad: {
        const int j = static_cast<int>(std::lround(nodes_(r, 1) * P));
        values[r] = vx[i] * vy[j];
        grads(r, 0) = dx[i] * vy[j];
        grads(r, 1) = vx[i] * dy[j];
        break;
      }
      case ElementKind::hex: {
        const int j = static_cast<int>(std::lround(nodes_(r, 1) * P));
        const int k = static_cast<int>(std::lround(nodes_(r, 2) * P));
        values[r] = vx[i] * vy[j] * vz[k];
        grads(r, 0) = dx[i] * vy[j] * vz[k];
        grads(r, 1) = vx[i] * dy[j] * vz[k];
        grads(r, 2) = vx[i] * vy[j] * dz[k];
        break;
      }
      case ElementKind::triangle:
        break;  // handled above
    }
  }
}

const ShapeBasis& shape_basis(ElementKind kind, int degree) {
  // All supported bases are built once up front; the registry is immutable
  // afterwards, which keeps lookups safe across threads.
  static const std::map<std::pair<ElementKind, int>, ShapeBasis> registry = [] {
    std::map<std::pair<ElementKind, int>, ShapeBasis> reg;
    for (ElementKind kind : {ElementKind::interval, ElementKind::triangle,
                             ElementKind::quad, ElementKind::hex}) {
      const int max = kind == ElementKind::hex ? 2 : 4;
      for (int p = 1; p <= max; ++p) reg.emplace(std::make_pair(kind, p), ShapeBasis(kind, p));
    }
    return reg;
  }();
  const auto it = registry.find({kind, degree});
  if (it == registry.end())
    throw UnsupportedConfigError("shape_basis: " + to_string(kind) + " of degree " +
                                 std::to_string(degree) + " is not supported");
  return it->second;
}

std::pair<Eigen::VectorXd, Eigen::MatrixXd> shape_eval(ElementKind kind, int degree,
                                                       const Eigen::VectorXd& xi) {
  std::pair<Eigen::VectorXd, Eigen::MatrixXd> out;
  shape_basis(kind, degree).eval(xi, out.first, out.second);
  return out;
}

}  // namespace vcmass
