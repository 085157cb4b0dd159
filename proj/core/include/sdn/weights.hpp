#pragma once

#include <vector>

#include "sdn/types.hpp"

namespace sdn {

// A bounded linear map applied on the left of p-dimensional vectors (q x p).
// Diagonal scalings and coordinate projections/selections are stored
// compactly; anything else is a dense matrix.
class WeightOperator {
 public:
  enum class Kind { identity, diagonal, projection, selection, dense };

  static WeightOperator identity(Index dim);
  static WeightOperator diagonal(Vector weights);
  // Square p x p 0/1 projection onto the given coordinates.
  static WeightOperator projection(std::vector<Index> indices, Index dim);
  // Rectangular |indices| x p matrix picking the given coordinates.
  static WeightOperator selection(std::vector<Index> indices, Index dim);
  static WeightOperator dense(Matrix m);

  Kind kind() const noexcept { return kind_; }
  Index rows() const noexcept;
  Index cols() const noexcept { return dim_; }

  Matrix apply(const MatrixRef& m) const;
  // Pads a rows() x k matrix back to cols() x k (the adjoint).
  Matrix apply_adjoint(const MatrixRef& m) const;
  // (Omega V)^T (Omega V).
  Matrix gram(const MatrixRef& vectors) const;
  // tr(Omega^T Omega).
  double squared_frobenius() const;
  double op_norm() const { return op_norm_; }
  Matrix to_dense() const;

  const Vector& diagonal_weights() const noexcept { return diag_; }
  const std::vector<Index>& indices() const noexcept { return indices_; }
  const Matrix& dense_matrix() const noexcept { return dense_; }

 private:
  WeightOperator(Kind kind, Index dim) : kind_(kind), dim_(dim) {}
  void finalize();

  Kind kind_;
  Index dim_;
  Vector diag_;
  std::vector<Index> indices_;
  Matrix dense_;
  double op_norm_ = 1.0;
};

// ||Omega M Pi^T||_F^2.
double weighted_squared_norm(const MatrixRef& m, const WeightOperator& omega, const WeightOperator& pi);

}  // namespace sdn
