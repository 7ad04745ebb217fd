#include "vcmass/sparse.hpp"

#include <stdexcept>

#include "vcmass/space.hpp"

namespace vcmass {

void SymmetricSparseMatrix::add(int i, int j, double value) {
  if (finalized_) throw std::logic_error("SymmetricSparseMatrix: add after finalize");
  if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
    throw std::out_of_range("SymmetricSparseMatrix: index out of range");
  if (i > j) std::swap(i, j);
  pending_.emplace_back(i, j, value);
}

void SymmetricSparseMatrix::finalize() {
  upper_.resize(dim_, dim_);
  upper_.setFromTriplets(pending_.begin(), pending_.end());
  upper_.makeCompressed();
  pending_.clear();
  finalized_ = true;
}

Eigen::VectorXd SymmetricSparseMatrix::apply(const Eigen::VectorXd& x) const {
  if (!finalized_) throw std::logic_error("SymmetricSparseMatrix: apply before finalize");
  return upper_.selfadjointView<Eigen::Upper>() * x;
}

Eigen::MatrixXd SymmetricSparseMatrix::dense() const {
  if (!finalized_) throw std::logic_error("SymmetricSparseMatrix: dense before finalize");
  const Eigen::SparseMatrix<double> full = upper_.selfadjointView<Eigen::Upper>();
  return Eigen::MatrixXd(full);
}

double SymmetricSparseMatrix::frobenius_norm() const {
  if (!finalized_) throw std::logic_error("SymmetricSparseMatrix: norm before finalize");
  double off = 0.0, diag = 0.0;
  for (int k = 0; k < upper_.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(upper_, k); it; ++it) {
      const double v2 = it.value() * it.value();
      (it.row() == it.col() ? diag : off) += v2;
    }
  return std::sqrt(diag + 2.0 * off);
}

SymmetricSparseMatrix matrix_sum(const SymmetricSparseMatrix& a,
                                 const SymmetricSparseMatrix& b, double scale_b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix_sum: dimension mismatch");
  if (!a.finalized() || !b.finalized())
    throw std::logic_error("matrix_sum: operands not finalized");
  SymmetricSparseMatrix out(a.dim());
  for (const auto* m : {&a, &b}) {
    const double scale = m == &a ? 1.0 : scale_b;
    const Eigen::SparseMatrix<double>& upper = m->upper();
    for (int k = 0; k < upper.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(upper, k); it; ++it)
        out.add(static_cast<int>(it.row()), static_cast<int>(it.col()), scale * it.value());
  }
  out.finalize();
  return out;
}

SymmetricSparseMatrix reduce_matrix(const SymmetricSparseMatrix& full,
                                    const DofReduction& reduction) {
  if (!full.finalized()) throw std::logic_error("reduce_matrix: matrix not finalized");
  SymmetricSparseMatrix out(reduction.size());
  const Eigen::SparseMatrix<double>& upper = full.upper();
  for (int k = 0; k < upper.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(upper, k); it; ++it) {
      const int i = reduction.reduced_of_full[it.row()];
      const int j = reduction.reduced_of_full[it.col()];
      if (i >= 0 && j >= 0) out.add(i, j, it.value());
    }
  out.finalize();
  return out;
}

}  // namespace vcmass
