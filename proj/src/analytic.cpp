#include "vcmass/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vcmass {

AnalyticEigenFamily::AnalyticEigenFamily(AnalyticFamilyKind kind, const MaterialScalar& mat,
                                         double length)
    : kind_(kind), mat_(mat), length_(length) {
  if (length <= 0.0) throw std::invalid_argument("AnalyticEigenFamily: length must be positive");
  if (mat.rho <= 0.0 || mat.T <= 0.0)
    throw std::invalid_argument("AnalyticEigenFamily: material must be positive");
}

std::vector<AnalyticMode> AnalyticEigenFamily::first(int count) const {
  if (count < 1) throw std::invalid_argument("AnalyticEigenFamily: count must be >= 1");
  const double unit =
      mat_.T / mat_.rho * std::numbers::pi * std::numbers::pi / (length_ * length_);
  std::vector<AnalyticMode> modes;

  if (kind_ == AnalyticFamilyKind::interval_dirichlet) {
    for (int n = 1; n <= count; ++n)
      modes.push_back({unit * n * n, {n, 0}});
    return modes;
  }

  // Enumerate a square of index pairs large enough that the first `count`
  // eigenvalues cannot be affected by the cut-off: the candidate set always
  // contains the full disk of radius `bound`.
  const int lo = kind_ == AnalyticFamilyKind::square_neumann ? 0 : 1;
  const int bound = static_cast<int>(std::ceil(std::sqrt(2.0 * count))) + 2;
  for (int m = lo; m <= bound; ++m)
    for (int n = lo; n <= bound; ++n) {
      if (m == 0 && n == 0) continue;  // constant Neumann mode is excluded
      modes.push_back({unit * (m * m + n * n), {m, n}});
    }
  std::sort(modes.begin(), modes.end(), [](const AnalyticMode& a, const AnalyticMode& b) {
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.index < b.index;
  });
  if (static_cast<int>(modes.size()) < count)
    throw std::invalid_argument("AnalyticEigenFamily: count too large for enumeration bound");
  modes.resize(count);
  // Any pair outside the enumerated square has lambda > unit*bound², so the
  // prefix is exact as long as it stays below that threshold.
  if (modes.back().lambda > unit * bound * bound)
    throw std::logic_error("AnalyticEigenFamily: enumeration bound too small");
  return modes;
}

double AnalyticEigenFamily::eval(const AnalyticMode& mode, const Eigen::VectorXd& x) const {
  const double k = std::numbers::pi / length_;
  if (kind_ == AnalyticFamilyKind::interval_dirichlet)
    return std::sin(mode.index[0] * k * x[0]);
  if (kind_ == AnalyticFamilyKind::square_dirichlet)
    return std::sin(mode.index[0] * k * x[0]) * std::sin(mode.index[1] * k * x[1]);
  return std::cos(mode.index[0] * k * x[0]) * std::cos(mode.index[1] * k * x[1]);
}

}  // namespace vcmass
