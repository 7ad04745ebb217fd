#include "vcmass/eigensolve.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "vcmass/errors.hpp"

namespace vcmass {

namespace {

// Locates the first non-positive pivot of a dense Cholesky sweep, for
// error reporting when M fails to be positive definite.
int failing_pivot(Eigen::MatrixXd A) {
  const int n = static_cast<int>(A.rows());
  for (int k = 0; k < n; ++k) {
    if (A(k, k) <= 0.0) return k;
    A(k, k) = std::sqrt(A(k, k));
    for (int i = k + 1; i < n; ++i) A(i, k) /= A(k, k);
    for (int j = k + 1; j < n; ++j)
      for (int i = j; i < n; ++i) A(i, j) -= A(i, k) * A(j, k);
  }
  return -1;
}

}  // namespace

Spectrum solve_generalized_eigen(const SymmetricSparseMatrix& K,
                                 const SymmetricSparseMatrix& M) {
  if (K.dim() != M.dim())
    throw std::invalid_argument("solve_generalized_eigen: dimension mismatch");
  const Eigen::MatrixXd Kd = K.dense();
  const Eigen::MatrixXd Md = M.dense();

  // Eigen's generalized solver does not surface a failed Cholesky of M, so the
  // definiteness check runs up front.
  const int pivot = failing_pivot(Md);
  if (pivot >= 0)
    throw DefinitenessError("mass matrix is not positive definite", pivot);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.compute(Kd, Md, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success)
    throw DefinitenessError("generalized eigensolver failed to converge", -1);

  Spectrum spectrum;
  spectrum.eigenvalues = solver.eigenvalues();
  spectrum.eigenvectors = solver.eigenvectors();
  return spectrum;
}

double max_generalized_eigenvalue(const SymmetricSparseMatrix& K,
                                  const SymmetricSparseMatrix& M) {
  if (K.dim() != M.dim())
    throw std::invalid_argument("max_generalized_eigenvalue: dimension mismatch");
  const int n = K.dim();

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Upper> llt;
  llt.compute(M.upper());
  if (llt.info() != Eigen::Success)
    throw DefinitenessError("mass matrix is not positive definite", failing_pivot(M.dense()));

  // Deterministic start with a mild gradient so no symmetry plane of the
  // problem can leave the iterate orthogonal to the dominant eigenspace.
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = 1.0 + 0.01 * (i % 7);
  x.normalize();

  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    const Eigen::VectorXd y = llt.solve(K.apply(x));
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;  // K vanishes on the whole space
    x = y / norm;
    const double rayleigh = x.dot(K.apply(x)) / x.dot(M.apply(x));
    if (it > 10 && std::abs(rayleigh - lambda) <= 1e-12 * std::abs(rayleigh))
      return rayleigh;
    lambda = rayleigh;
  }
  return lambda;
}

}  // namespace vcmass
