#include "sdn/applications.hpp"

#include <cmath>
#include <sstream>

#include "sdn/errors.hpp"

namespace sdn {

Covariance Covariance::identity(Index dim) {
  if (dim <= 0) throw InvalidArgument("covariance dimension must be positive");
  return diagonal(Vector::Ones(dim));
}

Covariance Covariance::diagonal(Vector entries) {
  if (entries.size() == 0) throw InvalidArgument("covariance must be nonempty");
  if (!entries.allFinite() || !(entries.minCoeff() > 0.0)) {
    throw InvalidArgument("covariance must be positive definite with finite entries");
  }
  Covariance c;
  c.diagonal_ = true;
  c.eigenvalues_ = std::move(entries);
  return c;
}

Covariance Covariance::dense(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) throw InvalidArgument("covariance must be square and nonempty");
  if (!m.allFinite()) throw InvalidArgument("covariance entries must be finite");
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff())) throw InvalidArgument("covariance must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
  if (!(es.eigenvalues().minCoeff() > 0.0)) throw InvalidArgument("covariance must be positive definite");
  Covariance c;
  c.diagonal_ = false;
  c.eigenvalues_ = es.eigenvalues();
  c.eigenvectors_ = es.eigenvectors();
  return c;
}

bool Covariance::is_scalar(double tol) const {
  const double mean = eigenvalues_.mean();
  return (eigenvalues_.array() - mean).abs().maxCoeff() <= tol * mean;
}

Covariance Covariance::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw InvalidArgument("scale factor must be positive");
  Covariance c = *this;
  c.eigenvalues_ *= factor;
  return c;
}

WeightOperator Covariance::power_operator(double e) const {
  const Vector powered = eigenvalues_.array().pow(e).matrix();
  if (diagonal_) return WeightOperator::diagonal(powered);
  Matrix m = eigenvectors_ * powered.asDiagonal() * eigenvectors_.transpose();
  m = 0.5 * (m + m.transpose());
  return WeightOperator::dense(std::move(m));
}

Matrix Covariance::to_dense() const {
  if (diagonal_) return eigenvalues_.asDiagonal();
  return eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.transpose();
}

bool NoiseCovariances::normalized(double tol) const {
  return std::abs(T.trace() / static_cast<double>(T.dim()) - 1.0) <= tol;
}

NoiseCovariances NoiseCovariances::normalize() const {
  const double theta = T.trace() / static_cast<double>(T.dim());
  return NoiseCovariances{S.scaled(theta), T.scaled(1.0 / theta)};
}

namespace {

// Omega M Pi^T for symmetric or selection operators.
Matrix two_sided(const WeightOperator& left, const MatrixRef& m, const WeightOperator& right) {
  const Matrix l = left.apply(m);
  return right.apply(l.transpose()).transpose();
}

std::vector<Index> checked_indices(const std::vector<Index>& idx, const char* what) {
  if (idx.empty()) {
    std::ostringstream msg;
    msg << what << " index set is empty";
    throw InvalidArgument(msg.str());
  }
  return idx;
}

}  // namespace

PipelineResult submatrix_denoise(const MatrixRef& Y, const std::vector<Index>& row_idx,
                                 const std::vector<Index>& col_idx, const DenoiseOptions& opts) {
  const WeightOperator omega = WeightOperator::selection(checked_indices(row_idx, "row"), Y.rows());
  const WeightOperator pi = WeightOperator::selection(checked_indices(col_idx, "column"), Y.cols());
  const SpectralBasis basis = spectral_basis(Y, opts.rank, opts.svd);
  PipelineResult out;
  out.inner = spectral_denoise(basis, omega, pi, opts);
  if (out.inner.rank_zero) {
    out.estimate = Matrix::Zero(omega.rows(), pi.rows());
  } else {
    out.estimate = reconstruct_block(basis.U, out.inner.B_hat, basis.V, omega.indices(), pi.indices());
  }
  return out;
}

PipelineResult shrink_submatrix_baseline(const MatrixRef& Y, const std::vector<Index>& row_idx,
                                         const std::vector<Index>& col_idx, const DenoiseOptions& opts) {
  const WeightOperator omega = WeightOperator::selection(checked_indices(row_idx, "row"), Y.rows());
  const WeightOperator pi = WeightOperator::selection(checked_indices(col_idx, "column"), Y.cols());
  const Matrix Y0 = two_sided(omega, Y, pi);
  // entries of Y0 have variance 1/n; rescale to the 1/n0 convention
  const double scale = std::sqrt(static_cast<double>(Y.cols()) / static_cast<double>(Y0.cols()));
  PipelineResult out;
  out.inner = svs_shrink(Y0 * scale, opts);
  out.estimate = out.inner.X_hat / scale;
  return out;
}

PipelineResult whiten_denoise(const MatrixRef& Y, const NoiseCovariances& cov, const DenoiseOptions& opts) {
  if (cov.S.dim() != Y.rows() || cov.T.dim() != Y.cols()) {
    throw InvalidArgument("noise covariance dimensions do not match the matrix");
  }
  const NoiseCovariances c = cov.normalized() ? cov : cov.normalize();
  const WeightOperator s_half = c.S.power_operator(0.5);
  const WeightOperator t_half = c.T.power_operator(0.5);
  const Matrix Yw = two_sided(c.S.power_operator(-0.5), Y, c.T.power_operator(-0.5));
  PipelineResult out;
  out.inner = spectral_denoise(Yw, s_half, t_half, opts);
  out.estimate = two_sided(s_half, out.inner.X_hat, t_half);
  return out;
}

NoiseCovariances estimate_noise_covariances(const MatrixRef& Y) {
  if (Y.size() == 0 || !Y.allFinite()) throw InvalidArgument("input matrix must be nonempty and finite");
  const Matrix sq = Y.cwiseAbs2();
  Vector a = sq.rowwise().sum();
  Vector b = sq.colwise().sum().transpose();
  for (Index i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0.0)) {
      std::ostringstream msg;
      msg << "row " << i << " is identically zero; noise covariance cannot be estimated";
      throw DegenerateEstimate(msg.str());
    }
  }
  for (Index j = 0; j < b.size(); ++j) {
    if (!(b[j] > 0.0)) {
      std::ostringstream msg;
      msg << "column " << j << " is identically zero; noise covariance cannot be estimated";
      throw DegenerateEstimate(msg.str());
    }
  }
  const double mean_a = a.sum() / static_cast<double>(Y.cols());
  b /= mean_a;
  a = a.cwiseMax(1e-12);
  b = b.cwiseMax(1e-12);
  NoiseCovariances cov{Covariance::diagonal(a), Covariance::diagonal(b)};
  return cov.normalize();
}

double snr_gain_tau(const NoiseCovariances& cov) {
  const double p = static_cast<double>(cov.S.dim());
  const double n = static_cast<double>(cov.T.dim());
  return (cov.S.trace() / p) * (cov.S.inverse_trace() / p) * (cov.T.trace() / n) * (cov.T.inverse_trace() / n);
}

void SamplingPattern::validate() const {
  if (rows <= 0 || cols <= 0) throw InvalidArgument("sampling pattern dimensions must be positive");
  if (q_row.size() != rows || q_col.size() != cols) {
    throw InvalidArgument("sampling probability vectors do not match the pattern dimensions");
  }
  for (Index i = 0; i < rows; ++i) {
    if (!(q_row[i] > 0.0 && q_row[i] <= 1.0)) throw InvalidArgument("row sampling probabilities must lie in (0, 1]");
  }
  for (Index j = 0; j < cols; ++j) {
    if (!(q_col[j] > 0.0 && q_col[j] <= 1.0)) throw InvalidArgument("column sampling probabilities must lie in (0, 1]");
  }
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> seen =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(rows, cols, false);
  for (const Entry& e : observed) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) throw InvalidArgument("observed entry out of range");
    if (!std::isfinite(e.value)) throw InvalidArgument("observed value is not finite");
    if (seen(e.row, e.col)) throw InvalidArgument("entry observed more than once");
    seen(e.row, e.col) = true;
  }
}

Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> SamplingPattern::mask() const {
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(rows, cols, false);
  for (const Entry& e : observed) m(e.row, e.col) = true;
  return m;
}

Vector sample(const MatrixRef& A, const SamplingPattern& pattern) {
  if (A.rows() != pattern.rows || A.cols() != pattern.cols) throw InvalidArgument("matrix does not match the pattern");
  Vector y(static_cast<Index>(pattern.observed.size()));
  for (std::size_t k = 0; k < pattern.observed.size(); ++k) {
    y[static_cast<Index>(k)] = A(pattern.observed[k].row, pattern.observed[k].col);
  }
  return y;
}

Matrix backproject(const SamplingPattern& pattern, const Vector& y) {
  if (y.size() != static_cast<Index>(pattern.observed.size())) {
    throw InvalidArgument("value vector does not match the number of observed entries");
  }
  Matrix out = Matrix::Zero(pattern.rows, pattern.cols);
  for (std::size_t k = 0; k < pattern.observed.size(); ++k) {
    out(pattern.observed[k].row, pattern.observed[k].col) = y[static_cast<Index>(k)];
  }
  return out;
}

Matrix backproject(const SamplingPattern& pattern) {
  Matrix out = Matrix::Zero(pattern.rows, pattern.cols);
  for (const Entry& e : pattern.observed) out(e.row, e.col) = e.value;
  return out;
}

PipelineResult missing_data_denoise(const SamplingPattern& pattern, double noise_sd, const DenoiseOptions& opts) {
  pattern.validate();
  if (!(noise_sd > 0.0) || !std::isfinite(noise_sd)) throw InvalidArgument("noise standard deviation must be positive");
  const Vector r_inv = pattern.q_row.cwiseSqrt().cwiseInverse();
  const Vector c_inv = pattern.q_col.cwiseSqrt().cwiseInverse();
  const WeightOperator omega = WeightOperator::diagonal(r_inv);
  const WeightOperator pi = WeightOperator::diagonal(c_inv);
  // whitened entries have noise variance noise_sd^2; divide by noise_sd*sqrt(n) for variance 1/n
  const double scale = noise_sd * std::sqrt(static_cast<double>(pattern.cols));
  const Matrix Yw = two_sided(omega, backproject(pattern), pi) / scale;
  PipelineResult out;
  out.inner = spectral_denoise(Yw, omega, pi, opts);
  out.estimate = two_sided(omega, out.inner.X_hat, pi) * scale;
  return out;
}

std::pair<Vector, Vector> estimate_sampling_probabilities(const SamplingPattern& pattern) {
  if (pattern.rows <= 0 || pattern.cols <= 0) throw InvalidArgument("sampling pattern dimensions must be positive");
  Vector rc = Vector::Zero(pattern.rows);
  Vector cc = Vector::Zero(pattern.cols);
  for (const Entry& e : pattern.observed) {
    rc[e.row] += 1.0;
    cc[e.col] += 1.0;
  }
  // q_i^r q_j^c is identifiable only up to a scalar; split it evenly
  const double total = static_cast<double>(pattern.observed.size());
  const double overall = total / (static_cast<double>(pattern.rows) * static_cast<double>(pattern.cols));
  if (!(overall > 0.0)) throw DegenerateEstimate("no observed entries");
  Vector qr = rc / static_cast<double>(pattern.cols) / std::sqrt(overall);
  Vector qc = cc / static_cast<double>(pattern.rows) / std::sqrt(overall);
  qr = qr.cwiseMax(1e-12).cwiseMin(1.0);
  qc = qc.cwiseMax(1e-12).cwiseMin(1.0);
  return {qr, qc};
}

}  // namespace sdn
