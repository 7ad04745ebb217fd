#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "vcmass/assembly.hpp"

namespace vcmass {

enum class AnalyticFamilyKind { interval_dirichlet, square_dirichlet, square_neumann };

struct AnalyticMode {
  double lambda;
  std::array<int, 2> index;  // mode numbers; second entry unused in 1D
};

/// Closed-form eigenpairs of the scalar wave operator on [0,L]^d. Dirichlet
/// families use sine products with mode numbers ≥ 1; the Neumann family uses
/// cosine products with numbers ≥ 0, excluding the constant zero mode.
class AnalyticEigenFamily {
public:
  AnalyticEigenFamily(AnalyticFamilyKind kind, const MaterialScalar& mat, double length);

  AnalyticFamilyKind kind() const { return kind_; }
  int dim() const { return kind_ == AnalyticFamilyKind::interval_dirichlet ? 1 : 2; }

  /// First `count` modes, eigenvalues ascending, ties broken by
  /// lexicographic mode index.
  std::vector<AnalyticMode> first(int count) const;

  /// Eigenfunction value (unnormalized) at physical point x.
  double eval(const AnalyticMode& mode, const Eigen::VectorXd& x) const;

private:
  AnalyticFamilyKind kind_;
  MaterialScalar mat_;
  double length_;
};

}  // namespace vcmass
