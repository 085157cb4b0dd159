#pragma once

#include <optional>
#include <vector>

#include "sdn/denoise.hpp"

namespace sdn {

// Symmetric positive-definite covariance, stored as a diagonal when possible.
class Covariance {
 public:
  static Covariance identity(Index dim);
  static Covariance diagonal(Vector entries);
  static Covariance dense(const Matrix& m);

  bool is_diagonal() const noexcept { return diagonal_; }
  Index dim() const noexcept { return eigenvalues_.size(); }
  double trace() const { return eigenvalues_.sum(); }
  double inverse_trace() const { return eigenvalues_.cwiseInverse().sum(); }
  double min_eigenvalue() const { return eigenvalues_.minCoeff(); }
  double max_eigenvalue() const { return eigenvalues_.maxCoeff(); }
  // True when every eigenvalue equals the mean to relative tolerance.
  bool is_scalar(double tol = 1e-12) const;

  Covariance scaled(double factor) const;
  // Power `e` of the covariance (e = 1/2 or -1/2 in practice).
  WeightOperator power_operator(double e) const;
  Matrix to_dense() const;

  const Vector& eigenvalues() const noexcept { return eigenvalues_; }

 private:
  bool diagonal_ = true;
  Vector eigenvalues_;
  Matrix eigenvectors_;  // empty for diagonal covariances
};

struct NoiseCovariances {
  Covariance S;
  Covariance T;

  bool normalized(double tol = 1e-12) const;
  // Moves a scalar between S and T so that tr(T)/n = 1. The noise S^1/2 G T^1/2
  // is unchanged.
  NoiseCovariances normalize() const;
};

struct PipelineResult {
  Matrix estimate;
  DenoiseResult inner;
};

PipelineResult submatrix_denoise(const MatrixRef& Y, const std::vector<Index>& row_idx,
                                 const std::vector<Index>& col_idx, const DenoiseOptions& opts = {});
PipelineResult shrink_submatrix_baseline(const MatrixRef& Y, const std::vector<Index>& row_idx,
                                         const std::vector<Index>& col_idx, const DenoiseOptions& opts = {});

PipelineResult whiten_denoise(const MatrixRef& Y, const NoiseCovariances& cov, const DenoiseOptions& opts = {});
NoiseCovariances estimate_noise_covariances(const MatrixRef& Y);
double snr_gain_tau(const NoiseCovariances& cov);

struct Entry {
  Index row = 0;
  Index col = 0;
  double value = 0.0;
};

struct SamplingPattern {
  Index rows = 0;
  Index cols = 0;
  Vector q_row;
  Vector q_col;
  std::vector<Entry> observed;

  void validate() const;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask() const;
};

// F(A): values of A at the observed positions, in pattern order.
Vector sample(const MatrixRef& A, const SamplingPattern& pattern);
// F*(y): zeros except y at observed positions (values taken from the pattern
// when y is omitted).
Matrix backproject(const SamplingPattern& pattern);
Matrix backproject(const SamplingPattern& pattern, const Vector& y);

// noise_sd is the standard deviation of the entry noise of the observed values.
PipelineResult missing_data_denoise(const SamplingPattern& pattern, double noise_sd = 1.0,
                                    const DenoiseOptions& opts = {});

// Observation frequencies per row and column. Not covered by the theory,
// which treats the probabilities as a known design.
std::pair<Vector, Vector> estimate_sampling_probabilities(const SamplingPattern& pattern);

}  // namespace sdn
