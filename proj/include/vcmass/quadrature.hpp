#pragma once

#include <Eigen/Core>

#include "vcmass/mesh.hpp"

namespace vcmass {

struct QuadratureRule {
  Eigen::MatrixXd points;   // one row per point, in reference coordinates
  Eigen::VectorXd weights;  // sums to the reference measure
  int num_points() const { return static_cast<int>(weights.size()); }
};

/// Gauss-Legendre rule with `n` points mapped to [0,1]; exact through
/// polynomial degree 2n-1. Supported for n in [1,8].
QuadratureRule gauss_legendre_unit(int n);

/// Rule on the reference element of `kind` exact for all polynomials of the
/// given degree (total degree on triangles, per-variable degree on tensor
/// cells).
QuadratureRule volume_rule(ElementKind kind, int degree);

/// Rule in facet parameter space for the faces of `kind` elements; exact for
/// the given degree. For intervals this is the single point of a vertex.
QuadratureRule facet_rule(ElementKind kind, int degree);

}  // namespace vcmass
