#include "sdn/weights.hpp"

#include <algorithm>
#include <cmath>

#include "sdn/errors.hpp"

namespace sdn {

namespace {

void check_indices(std::vector<Index>& idx, Index dim) {
  if (dim <= 0) throw InvalidArgument("weight operator dimension must be positive");
  if (idx.empty()) throw InvalidArgument("index set must be nonempty");
  std::sort(idx.begin(), idx.end());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 0 || idx[k] >= dim) throw InvalidArgument("index out of range");
    if (k > 0 && idx[k] == idx[k - 1]) throw InvalidArgument("duplicate index in index set");
  }
}

}  // namespace

WeightOperator WeightOperator::identity(Index dim) {
  if (dim <= 0) throw InvalidArgument("weight operator dimension must be positive");
  WeightOperator w(Kind::identity, dim);
  w.finalize();
  return w;
}

WeightOperator WeightOperator::diagonal(Vector weights) {
  if (weights.size() == 0) throw InvalidArgument("diagonal weights must be nonempty");
  if (!weights.allFinite()) throw InvalidArgument("weights must be finite");
  WeightOperator w(Kind::diagonal, weights.size());
  w.diag_ = std::move(weights);
  w.finalize();
  return w;
}

WeightOperator WeightOperator::projection(std::vector<Index> indices, Index dim) {
  check_indices(indices, dim);
  WeightOperator w(Kind::projection, dim);
  w.indices_ = std::move(indices);
  w.finalize();
  return w;
}

WeightOperator WeightOperator::selection(std::vector<Index> indices, Index dim) {
  check_indices(indices, dim);
  WeightOperator w(Kind::selection, dim);
  w.indices_ = std::move(indices);
  w.finalize();
  return w;
}

WeightOperator WeightOperator::dense(Matrix m) {
  if (m.size() == 0) throw InvalidArgument("dense weight matrix must be nonempty");
  if (!m.allFinite()) throw InvalidArgument("weights must be finite");
  WeightOperator w(Kind::dense, m.cols());
  w.dense_ = std::move(m);
  w.finalize();
  return w;
}

void WeightOperator::finalize() {
  switch (kind_) {
    case Kind::identity:
    case Kind::projection:
    case Kind::selection:
      op_norm_ = 1.0;
      break;
    case Kind::diagonal:
      op_norm_ = diag_.cwiseAbs().maxCoeff();
      break;
    case Kind::dense: {
      Eigen::JacobiSVD<Matrix> svd(dense_);
      op_norm_ = svd.singularValues()(0);
      break;
    }
  }
}

Index WeightOperator::rows() const noexcept {
  switch (kind_) {
    case Kind::selection:
      return static_cast<Index>(indices_.size());
    case Kind::dense:
      return dense_.rows();
    default:
      return dim_;
  }
}

Matrix WeightOperator::apply(const MatrixRef& m) const {
  if (m.rows() != dim_) throw InvalidArgument("weight operator dimension mismatch");
  switch (kind_) {
    case Kind::identity:
      return m;
    case Kind::diagonal:
      return diag_.asDiagonal() * m;
    case Kind::projection: {
      Matrix out = Matrix::Zero(m.rows(), m.cols());
      for (Index i : indices_) out.row(i) = m.row(i);
      return out;
    }
    case Kind::selection: {
      Matrix out(static_cast<Index>(indices_.size()), m.cols());
      for (std::size_t k = 0; k < indices_.size(); ++k) out.row(static_cast<Index>(k)) = m.row(indices_[k]);
      return out;
    }
    case Kind::dense:
      return dense_ * m;
  }
  return m;
}

Matrix WeightOperator::apply_adjoint(const MatrixRef& m) const {
  if (m.rows() != rows()) throw InvalidArgument("weight operator dimension mismatch");
  switch (kind_) {
    case Kind::selection: {
      Matrix out = Matrix::Zero(dim_, m.cols());
      for (std::size_t k = 0; k < indices_.size(); ++k) out.row(indices_[k]) = m.row(static_cast<Index>(k));
      return out;
    }
    case Kind::dense:
      return dense_.transpose() * m;
    default:
      return apply(m);
  }
}

Matrix WeightOperator::gram(const MatrixRef& vectors) const {
  if (vectors.rows() != dim_) throw InvalidArgument("weight operator dimension mismatch");
  const Index r = vectors.cols();
  Matrix g(r, r);
  switch (kind_) {
    case Kind::identity:
      g.noalias() = vectors.transpose() * vectors;
      break;
    case Kind::diagonal: {
      const Vector w2 = diag_.cwiseAbs2();
      g.noalias() = vectors.transpose() * w2.asDiagonal() * vectors;
      break;
    }
    case Kind::projection:
    case Kind::selection: {
      const Matrix sub = apply(vectors);
      g.noalias() = sub.transpose() * sub;
      break;
    }
    case Kind::dense: {
      const Matrix wv = dense_ * vectors;
      g.noalias() = wv.transpose() * wv;
      break;
    }
  }
  // exact symmetry regardless of the product kernel's summation order
  for (Index j = 0; j < r; ++j) {
    for (Index k = j + 1; k < r; ++k) g(k, j) = g(j, k);
  }
  return g;
}

double WeightOperator::squared_frobenius() const {
  switch (kind_) {
    case Kind::identity:
      return static_cast<double>(dim_);
    case Kind::diagonal:
      return diag_.squaredNorm();
    case Kind::projection:
    case Kind::selection:
      return static_cast<double>(indices_.size());
    case Kind::dense:
      return dense_.squaredNorm();
  }
  return 0.0;
}

Matrix WeightOperator::to_dense() const {
  return apply(Matrix::Identity(dim_, dim_));
}

double weighted_squared_norm(const MatrixRef& m, const WeightOperator& omega, const WeightOperator& pi) {
  if (m.rows() != omega.cols() || m.cols() != pi.cols()) {
    throw InvalidArgument("weighted norm dimension mismatch");
  }
  const Matrix left = omega.apply(m);
  const Matrix both = pi.apply(left.transpose());
  return both.squaredNorm();
}

}  // namespace sdn
