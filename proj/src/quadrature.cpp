#include "vcmass/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace vcmass {

namespace {

// Gauss-Legendre abscissae/weights on [-1,1], positive half only.
struct GaussHalf {
  int n;
  double x[4];
  double w[4];
};

const GaussHalf kGauss[8] = {
    {1, {0.0}, {2.0}},
    {2, {0.5773502691896257}, {1.0}},
    {3, {0.0, 0.7745966692414834}, {0.8888888888888888, 0.5555555555555556}},
    {4,
     {0.3399810435848563, 0.8611363115940526},
     {0.6521451548625461, 0.3478548451374538}},
    {5,
     {0.0, 0.5384693101056831, 0.9061798459386640},
     {0.5688888888888889, 0.4786286704993665, 0.2369268850561891}},
    {6,
     {0.2386191860831969, 0.6612093864662645, 0.9324695142031521},
     {0.4679139345726910, 0.3607615730481386, 0.1713244923791704}},
    {7,
     {0.0, 0.4058451513773972, 0.7415311855993945, 0.9491079123427585},
     {0.4179591836734694, 0.3818300505051189, 0.2797053914892766, 0.1294849661688697}},
    {8,
     {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363},
     {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763}},
};

QuadratureRule tensor_rule(const QuadratureRule& line, int dim) {
  const int n = line.num_points();
  int total = 1;
  for (int d = 0; d < dim; ++d) total *= n;
  QuadratureRule rule;
  rule.points.resize(total, dim);
  rule.weights.resize(total);
  for (int idx = 0; idx < total; ++idx) {
    int rest = idx;
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      const int i = rest % n;
      rest /= n;
      rule.points(idx, d) = line.points(i, 0);
      w *= line.weights[i];
    }
    rule.weights[idx] = w;
  }
  return rule;
}

// Conical product rule on the unit triangle: map (u,v) in [0,1]^2 through
// (u(1-v), v) and fold the Jacobian (1-v) into the weights. A u-rule of
// degree d and a v-rule of degree d+1 integrate total degree d exactly.
QuadratureRule triangle_rule(int degree) {
  const QuadratureRule ru = gauss_legendre_unit((degree + 2) / 2);
  const QuadratureRule rv = gauss_legendre_unit((degree + 3) / 2);
  QuadratureRule rule;
  const int total = ru.num_points() * rv.num_points();
  rule.points.resize(total, 2);
  rule.weights.resize(total);
  int idx = 0;
  for (int j = 0; j < rv.num_points(); ++j)
    for (int i = 0; i < ru.num_points(); ++i, ++idx) {
      const double u = ru.points(i, 0), v = rv.points(j, 0);
      rule.points.row(idx) << u * (1.0 - v), v;
      rule.weights[idx] = ru.weights[i] * rv.weights[j] * (1.0 - v);
    }
  return rule;
}

}  // namespace

QuadratureRule gauss_legendre_unit(int n) {
  if (n < 1 || n > 8)
    throw std::invalid_argument("gauss_legendre_unit: supported point counts are 1..8");
  const GaussHalf& g = kGauss[n - 1];
  QuadratureRule rule;
  rule.points.resize(n, 1);
  rule.weights.resize(n);
  // Expand the positive-half table into symmetric pairs, mapped to [0,1].
  int idx = 0;
  const int pairs = n / 2;
  const bool has_center = n % 2 == 1;
  if (has_center) {
    rule.points(idx, 0) = 0.5;
    rule.weights[idx++] = 0.5 * g.w[0];
  }
  for (int i = has_center ? 1 : 0, k = 0; k < pairs; ++i, ++k) {
    rule.points(idx, 0) = 0.5 * (1.0 - g.x[i]);
    rule.weights[idx++] = 0.5 * g.w[i];
    rule.points(idx, 0) = 0.5 * (1.0 + g.x[i]);
    rule.weights[idx++] = 0.5 * g.w[i];
  }
  return rule;
}

QuadratureRule volume_rule(ElementKind kind, int degree) {
  if (degree < 0) throw std::invalid_argument("volume_rule: degree must be non-negative");
  if (kind == ElementKind::triangle) return triangle_rule(degree);
  const QuadratureRule line = gauss_legendre_unit(degree / 2 + 1);
  return tensor_rule(line, kind_dimension(kind));
}

QuadratureRule facet_rule(ElementKind kind, int degree) {
  const int fdim = kind_dimension(kind) - 1;
  if (fdim == 0) {
    QuadratureRule rule;
    rule.points.resize(1, 0);
    rule.weights = Eigen::VectorXd::Ones(1);
    return rule;
  }
  const QuadratureRule line = gauss_legendre_unit(degree / 2 + 1);
  return fdim == 1 ? line : tensor_rule(line, 2);
}

}  // namespace vcmass
