#pragma once

#include <vector>

#include "vcmass/sparse.hpp"

namespace vcmass {

/// Eigen-decomposition of K ξ = λ M ξ with ascending eigenvalues and
/// M-orthonormal eigenvector columns. `matched` is filled by match_modes:
/// entry a is the discrete mode assigned to analytic mode a.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  std::vector<int> matched;

  int size() const { return static_cast<int>(eigenvalues.size()); }
};

/// Full dense generalized symmetric eigensolve. M must be positive definite;
/// a failed factorization raises DefinitenessError naming the pivot.
/// Intended for desk-scale systems (a few thousand DOFs).
Spectrum solve_generalized_eigen(const SymmetricSparseMatrix& K,
                                 const SymmetricSparseMatrix& M);

/// Largest eigenvalue of the pair only, via power iteration on M⁻¹K with a
/// sparse Cholesky factorization of M. Cheaper than the dense path when the
/// full spectrum is not needed.
double max_generalized_eigenvalue(const SymmetricSparseMatrix& K,
                                  const SymmetricSparseMatrix& M);

}  // namespace vcmass
