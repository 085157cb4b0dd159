#include "sdn/denoise.hpp"

#include <algorithm>
#include <cmath>

#include "sdn/errors.hpp"

namespace sdn {

SpectralBasis spectral_basis(const MatrixRef& Y, const RankSelection& rank, const SvdOptions& svd) {
  if (Y.size() == 0) throw InvalidArgument("input matrix is empty");
  if (!Y.allFinite()) throw InvalidArgument("input matrix contains non-finite entries");
  if (!(rank.margin >= 0.0)) throw InvalidArgument("detection margin must be nonnegative");
  const AspectRatio gamma = AspectRatio::of(Y.rows(), Y.cols());
  SingularTriplets trip;
  if (rank.rank) {
    if (*rank.rank < 0 || *rank.rank > std::min(Y.rows(), Y.cols())) {
      throw InvalidArgument("requested rank out of range");
    }
    trip = leading_triplets(Y, *rank.rank, svd);
  } else {
    trip = triplets_above(Y, gamma.bulk_edge() + rank.margin, 0, svd);
  }
  SpectralBasis basis;
  const std::span<const double> vals(trip.values.data(), static_cast<std::size_t>(trip.values.size()));
  basis.spikes = estimate_spike_params(vals, gamma, trip.values.size());
  basis.U = std::move(trip.U);
  basis.V = std::move(trip.V);
  return basis;
}

Matrix symmetric_pinv(const Matrix& A, double cutoff) {
  if (A.rows() == 0) return A;
  Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  const Vector& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  Vector inv = Vector::Zero(ev.size());
  for (Index i = 0; i < ev.size(); ++i) {
    if (top > 0.0 && std::abs(ev[i]) > cutoff * top) inv[i] = 1.0 / ev[i];
  }
  Matrix out = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
  return 0.5 * (out + out.transpose());
}

Matrix optimal_B(const WeightedGeometry& g, double pinv_cutoff) {
  if (g.rank == 0) return Matrix(0, 0);
  const Matrix Dp = symmetric_pinv(g.D, pinv_cutoff);
  const Matrix Dtp = symmetric_pinv(g.D_tilde, pinv_cutoff);
  return Dp * g.C * g.t.asDiagonal() * g.C_tilde.transpose() * Dtp;
}

AmseValue amse_estimate(const WeightedGeometry& g, double pinv_cutoff) {
  AmseValue out;
  if (g.rank == 0) return out;
  const Matrix Dp = symmetric_pinv(g.D, pinv_cutoff);
  const Matrix Dtp = symmetric_pinv(g.D_tilde, pinv_cutoff);
  const auto T = g.t.asDiagonal();
  const Matrix first = g.E * T * g.E_tilde;
  const Matrix second = g.C.transpose() * Dp * g.C * T * g.C_tilde.transpose() * Dtp * g.C_tilde;
  double v = 0.0;
  for (Index k = 0; k < g.rank; ++k) v += (first(k, k) - second(k, k)) * g.t[k];
  if (v < 0.0) {
    out.clamped = true;
    v = 0.0;
  }
  out.value = v;
  return out;
}

double quadratic_objective(const WeightedGeometry& g, const Matrix& B) {
  const Matrix target = g.C * g.t.asDiagonal() * g.C_tilde.transpose();
  return (g.D * B * g.D_tilde).cwiseProduct(B).sum() - 2.0 * target.cwiseProduct(B).sum();
}

WeightedGeometry estimate_geometry(const SpectralBasis& basis, const WeightOperator& omega, const WeightOperator& pi,
                                   const GeometryOptions& opts) {
  const Index p = basis.U.rows();
  const Index n = basis.V.rows();
  if (omega.cols() != p) throw InvalidArgument("row weight operator must have p columns");
  if (pi.cols() != n) throw InvalidArgument("column weight operator must have n columns");
  const double mu = trace_weight(omega, p);
  const double nu = trace_weight(pi, n);
  const Matrix D = weighted_gram(basis.U, omega);
  const Matrix Dt = weighted_gram(basis.V, pi);
  return recover_population_geometry(D, Dt, basis.spikes, mu, nu, opts);
}

CoefficientEstimate estimate_coefficients(const SpectralBasis& basis, const WeightOperator& omega,
                                          const WeightOperator& pi, const DenoiseOptions& opts) {
  CoefficientEstimate est;
  est.geometry = estimate_geometry(basis, omega, pi, opts.geometry);
  est.B_hat = optimal_B(est.geometry, opts.pinv_cutoff);
  est.amse = amse_estimate(est.geometry, opts.pinv_cutoff);
  return est;
}

namespace {

DenoiseResult zero_result(const SpectralBasis& basis) {
  DenoiseResult res;
  res.B_hat = Matrix(0, 0);
  res.X_hat = Matrix::Zero(basis.U.rows(), basis.V.rows());
  res.rank_zero = true;
  res.spikes = basis.spikes;
  return res;
}

}  // namespace

DenoiseResult spectral_denoise(const SpectralBasis& basis, const WeightOperator& omega, const WeightOperator& pi,
                               const DenoiseOptions& opts) {
  if (omega.cols() != basis.U.rows()) throw InvalidArgument("row weight operator must have p columns");
  if (pi.cols() != basis.V.rows()) throw InvalidArgument("column weight operator must have n columns");
  if (basis.spikes.rank() == 0) return zero_result(basis);
  CoefficientEstimate est = estimate_coefficients(basis, omega, pi, opts);
  DenoiseResult res;
  res.B_hat = std::move(est.B_hat);
  res.X_hat = reconstruct(basis.U, res.B_hat, basis.V);
  res.amse_estimate = est.amse.value;
  res.amse_clamped = est.amse.clamped;
  res.spikes = basis.spikes;
  res.clipped_components = est.geometry.clipped;
  res.geometry = std::move(est.geometry);
  return res;
}

DenoiseResult spectral_denoise(const MatrixRef& Y, const WeightOperator& omega, const WeightOperator& pi,
                               const DenoiseOptions& opts) {
  if (omega.cols() != Y.rows()) throw InvalidArgument("row weight operator must have p columns");
  if (pi.cols() != Y.cols()) throw InvalidArgument("column weight operator must have n columns");
  return spectral_denoise(spectral_basis(Y, opts.rank, opts.svd), omega, pi, opts);
}

DiagonalShrinker diagonal_shrinker(double t, AspectRatio gamma, double alpha, double beta, double mu, double nu) {
  const Cosines cs = cosines(t, gamma);
  DiagonalShrinker out;
  out.lambda = forward_singular_value(t, gamma);
  const double c2 = cs.c * cs.c;
  const double ct2 = cs.c_tilde * cs.c_tilde;
  const double den_l = c2 * alpha + cs.s * cs.s * mu;
  const double den_r = ct2 * beta + cs.s_tilde * cs.s_tilde * nu;
  out.eta = (den_l > 0.0 && den_r > 0.0) ? (alpha / den_l) * (beta / den_r) : 0.0;
  out.t_hat = t * cs.c * cs.c_tilde * out.eta;
  return out;
}

DenoiseResult diagonal_denoise(const MatrixRef& Y, const WeightOperator& omega, const WeightOperator& pi,
                               const DenoiseOptions& opts) {
  if (omega.cols() != Y.rows()) throw InvalidArgument("row weight operator must have p columns");
  if (pi.cols() != Y.cols()) throw InvalidArgument("column weight operator must have n columns");
  const SpectralBasis basis = spectral_basis(Y, opts.rank, opts.svd);
  if (basis.spikes.rank() == 0) return zero_result(basis);
  DenoiseResult res;
  res.geometry = estimate_geometry(basis, omega, pi, opts.geometry);
  const WeightedGeometry& g = res.geometry;
  const SpikeParams& sp = basis.spikes;
  const Index r = sp.rank();
  res.B_hat = Matrix::Zero(r, r);
  double amse = 0.0;
  for (Index k = 0; k < r; ++k) {
    const double c2 = sp.c[k] * sp.c[k];
    const double ct2 = sp.c_tilde[k] * sp.c_tilde[k];
    const double eta = g.alpha[k] / (c2 * g.alpha[k] + sp.s[k] * sp.s[k] * g.mu) * g.beta[k] /
                       (ct2 * g.beta[k] + sp.s_tilde[k] * sp.s_tilde[k] * g.nu);
    res.B_hat(k, k) = sp.t[k] * sp.c[k] * sp.c_tilde[k] * eta;
    amse += sp.t[k] * sp.t[k] * g.alpha[k] * g.beta[k] * (1.0 - c2 * ct2 * eta);
  }
  if (amse < 0.0) {
    amse = 0.0;
    res.amse_clamped = true;
  }
  res.amse_estimate = amse;
  res.X_hat = reconstruct(basis.U, res.B_hat, basis.V);
  res.spikes = sp;
  res.clipped_components = g.clipped;
  return res;
}

DenoiseResult svs_shrink(const SpectralBasis& basis) {
  if (basis.spikes.rank() == 0) return zero_result(basis);
  const SpikeParams& sp = basis.spikes;
  const Index r = sp.rank();
  DenoiseResult res;
  res.spikes = sp;
  res.B_hat = Matrix::Zero(r, r);
  double amse = 0.0;
  for (Index k = 0; k < r; ++k) {
    const double cc = sp.c[k] * sp.c_tilde[k];
    res.B_hat(k, k) = sp.t[k] * cc;
    amse += sp.t[k] * sp.t[k] * (1.0 - cc * cc);
  }
  res.amse_estimate = amse;

  WeightedGeometry& g = res.geometry;
  g.rank = r;
  g.t = sp.t;
  g.D = Matrix::Identity(r, r);
  g.D_tilde = Matrix::Identity(r, r);
  g.E = Matrix::Identity(r, r);
  g.E_tilde = Matrix::Identity(r, r);
  g.C = sp.c.asDiagonal();
  g.C_tilde = sp.c_tilde.asDiagonal();
  g.alpha = Vector::Ones(r);
  g.beta = Vector::Ones(r);
  res.X_hat = reconstruct(basis.U, res.B_hat, basis.V);
  return res;
}

DenoiseResult svs_shrink(const MatrixRef& Y, const DenoiseOptions& opts) {
  return svs_shrink(spectral_basis(Y, opts.rank, opts.svd));
}

ShrinkageReport check_shrinkage_properties(AspectRatio gamma, double alpha, double beta, double mu, double nu,
                                           std::span<const double> t_grid) {
  if (!(alpha > 0.0 && beta > 0.0 && mu > 0.0 && nu > 0.0)) {
    throw InvalidArgument("alpha, beta, mu and nu must be positive");
  }
  ShrinkageReport rep;
  rep.hypothesis = (alpha <= mu) || (beta <= nu);
  const double thr = gamma.detection_threshold();
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > thr)) throw InvalidArgument("grid values must exceed gamma^(1/4)");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw InvalidArgument("grid must be strictly increasing");
    const DiagonalShrinker d = diagonal_shrinker(t_grid[i], gamma, alpha, beta, mu, nu);
    rep.t.push_back(t_grid[i]);
    rep.lambda.push_back(d.lambda);
    rep.t_hat.push_back(d.t_hat);
    const Index idx = static_cast<Index>(i);
    if (d.t_hat > d.lambda * (1.0 + 1e-12)) {
      rep.shrinks = false;
      rep.shrink_violations.push_back(idx);
    }
    if (i > 0 && d.t_hat < rep.t_hat[i - 1] - 1e-12 * std::abs(rep.t_hat[i - 1])) {
      rep.monotone = false;
      rep.monotone_violations.push_back(idx);
    }
  }
  return rep;
}

Matrix reconstruct(const Matrix& U, const Matrix& B, const Matrix& V) {
  std::vector<Index> rows(static_cast<std::size_t>(U.rows()));
  std::vector<Index> cols(static_cast<std::size_t>(V.rows()));
  for (Index i = 0; i < U.rows(); ++i) rows[static_cast<std::size_t>(i)] = i;
  for (Index j = 0; j < V.rows(); ++j) cols[static_cast<std::size_t>(j)] = j;
  return reconstruct_block(U, B, V, rows, cols);
}

Matrix reconstruct_block(const Matrix& U, const Matrix& B, const Matrix& V, std::span<const Index> rows,
                         std::span<const Index> cols) {
  const Index r = B.rows();
  if (B.cols() != r || U.cols() != r || V.cols() != r) throw InvalidArgument("reconstruct: rank mismatch");
  const Index nr = static_cast<Index>(rows.size());
  const Index nc = static_cast<Index>(cols.size());
  // W = U_rows B, then X(i, j) = sum_k W(i, k) V(j, k) in fixed k order
  Matrix W = Matrix::Zero(nr, r);
  for (Index a = 0; a < nr; ++a) {
    const Index i = rows[static_cast<std::size_t>(a)];
    for (Index k = 0; k < r; ++k) {
      double acc = 0.0;
      for (Index l = 0; l < r; ++l) acc += U(i, l) * B(l, k);
      W(a, k) = acc;
    }
  }
  Matrix X(nr, nc);
  for (Index b = 0; b < nc; ++b) {
    const Index j = cols[static_cast<std::size_t>(b)];
    for (Index a = 0; a < nr; ++a) {
      double acc = 0.0;
      for (Index k = 0; k < r; ++k) acc += W(a, k) * V(j, k);
      X(a, b) = acc;
    }
  }
  return X;
}

}  // namespace sdn
