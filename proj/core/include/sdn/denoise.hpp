#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sdn/geometry.hpp"
#include "sdn/spiked.hpp"
#include "sdn/svd.hpp"
#include "sdn/types.hpp"
#include "sdn/weights.hpp"

namespace sdn {

struct RankSelection {
  std::optional<Index> rank;  // forced rank; otherwise naive detection
  double margin = 0.0;        // extra margin above the bulk edge for detection
};

struct DenoiseOptions {
  RankSelection rank;
  GeometryOptions geometry;
  double pinv_cutoff = 1e-8;
  SvdOptions svd;
};

// Top singular subspaces of Y together with the recovered spike parameters.
struct SpectralBasis {
  Matrix U;
  Matrix V;
  SpikeParams spikes;
};

SpectralBasis spectral_basis(const MatrixRef& Y, const RankSelection& rank = {}, const SvdOptions& svd = {});

struct AmseValue {
  double value = 0.0;
  bool clamped = false;
};

// Symmetric pseudoinverse, eigenvalues below cutoff * max eigenvalue dropped.
Matrix symmetric_pinv(const Matrix& A, double cutoff = 1e-8);

Matrix optimal_B(const WeightedGeometry& g, double pinv_cutoff = 1e-8);
AmseValue amse_estimate(const WeightedGeometry& g, double pinv_cutoff = 1e-8);

// <D B D~, B> - 2 <C diag(t) C~^T, B>
double quadratic_objective(const WeightedGeometry& g, const Matrix& B);

struct DenoiseResult {
  Matrix B_hat;
  Matrix X_hat;
  double amse_estimate = 0.0;
  bool amse_clamped = false;
  bool rank_zero = false;
  SpikeParams spikes;
  WeightedGeometry geometry;
  std::vector<Index> clipped_components;
};

// Coefficients and geometry for given weights, without forming X_hat.
struct CoefficientEstimate {
  Matrix B_hat;
  WeightedGeometry geometry;
  AmseValue amse;
};

WeightedGeometry estimate_geometry(const SpectralBasis& basis, const WeightOperator& omega, const WeightOperator& pi,
                                   const GeometryOptions& opts = {});
CoefficientEstimate estimate_coefficients(const SpectralBasis& basis, const WeightOperator& omega,
                                          const WeightOperator& pi, const DenoiseOptions& opts = {});

DenoiseResult spectral_denoise(const MatrixRef& Y, const WeightOperator& omega, const WeightOperator& pi,
                               const DenoiseOptions& opts = {});
DenoiseResult spectral_denoise(const SpectralBasis& basis, const WeightOperator& omega, const WeightOperator& pi,
                               const DenoiseOptions& opts = {});

DenoiseResult diagonal_denoise(const MatrixRef& Y, const WeightOperator& omega, const WeightOperator& pi,
                               const DenoiseOptions& opts = {});

// Optimal singular value shrinkage, t_k c_k c~_k.
DenoiseResult svs_shrink(const MatrixRef& Y, const DenoiseOptions& opts = {});
DenoiseResult svs_shrink(const SpectralBasis& basis);

// Scalar form of the diagonal denoiser for one component.
struct DiagonalShrinker {
  double t_hat = 0.0;
  double eta = 1.0;
  double lambda = 0.0;
};
DiagonalShrinker diagonal_shrinker(double t, AspectRatio gamma, double alpha, double beta, double mu, double nu);

struct ShrinkageReport {
  std::vector<double> t, lambda, t_hat;
  bool hypothesis = false;         // alpha <= mu or beta <= nu
  bool shrinks = true;             // t_hat <= lambda everywhere
  bool monotone = true;            // t_hat nondecreasing in lambda
  std::vector<Index> shrink_violations;
  std::vector<Index> monotone_violations;
};
ShrinkageReport check_shrinkage_properties(AspectRatio gamma, double alpha, double beta, double mu, double nu,
                                           std::span<const double> t_grid);

// U B V^T with a fixed summation order, optionally restricted to a block.
Matrix reconstruct(const Matrix& U, const Matrix& B, const Matrix& V);
Matrix reconstruct_block(const Matrix& U, const Matrix& B, const Matrix& V, std::span<const Index> rows,
                         std::span<const Index> cols);

}  // namespace sdn
