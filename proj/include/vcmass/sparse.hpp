#pragma once

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace vcmass {

struct DofReduction;

/// Sparse symmetric matrix holding the upper triangle only, so symmetry is
/// exact by construction. Accumulate entries with `add`, then `finalize`
/// before any product or query.
class SymmetricSparseMatrix {
public:
  explicit SymmetricSparseMatrix(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }

  /// Accumulates value at (i,j); the mirrored entry is implied.
  void add(int i, int j, double value);

  void finalize();
  bool finalized() const { return finalized_; }

  /// y = A x using the symmetric view.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

  Eigen::MatrixXd dense() const;
  const Eigen::SparseMatrix<double>& upper() const { return upper_; }

  double frobenius_norm() const;
  int stored_entries() const { return static_cast<int>(upper_.nonZeros()); }

private:
  int dim_;
  bool finalized_ = false;
  std::vector<Eigen::Triplet<double>> pending_;
  Eigen::SparseMatrix<double> upper_;
};

/// Restriction of a symmetric matrix to the free DOFs of a reduction:
/// rows and columns of constrained DOFs are dropped.
SymmetricSparseMatrix reduce_matrix(const SymmetricSparseMatrix& full,
                                    const DofReduction& reduction);

/// a + scale_b * b for matrices of equal dimension.
SymmetricSparseMatrix matrix_sum(const SymmetricSparseMatrix& a,
                                 const SymmetricSparseMatrix& b, double scale_b);

}  // namespace vcmass
