#include "sdn/localized.hpp"

#include <algorithm>

#include "sdn/errors.hpp"

namespace sdn {

Partition::Partition(Index dim, std::vector<std::vector<Index>> blocks) : dim_(dim), blocks_(std::move(blocks)) {
  if (dim <= 0) throw InvalidArgument("partition dimension must be positive");
  if (blocks_.empty()) throw InvalidArgument("partition must have at least one block");
  std::vector<char> seen(static_cast<std::size_t>(dim), 0);
  Index covered = 0;
  for (auto& b : blocks_) {
    if (b.empty()) throw InvalidArgument("partition blocks must be nonempty");
    std::sort(b.begin(), b.end());
    for (Index i : b) {
      if (i < 0 || i >= dim) throw InvalidArgument("partition index out of range");
      if (seen[static_cast<std::size_t>(i)]) throw InvalidArgument("partition blocks overlap");
      seen[static_cast<std::size_t>(i)] = 1;
      ++covered;
    }
  }
  if (covered != dim) throw InvalidArgument("partition blocks do not cover every index");
}

Partition Partition::single(Index dim) { return make_equispaced_partition(dim, 1); }

WeightOperator Partition::projection(Index i) const { return WeightOperator::projection(block(i), dim_); }

WeightOperator Partition::selection(Index i) const { return WeightOperator::selection(block(i), dim_); }

Partition make_equispaced_partition(Index dim, Index num_blocks) {
  if (dim <= 0) throw InvalidArgument("partition dimension must be positive");
  if (num_blocks < 1 || num_blocks > dim) throw InvalidArgument("number of blocks must lie in [1, dim]");
  const Index base = dim / num_blocks;
  const Index extra = dim % num_blocks;
  std::vector<std::vector<Index>> blocks;
  Index start = 0;
  for (Index b = 0; b < num_blocks; ++b) {
    const Index len = base + (b < extra ? 1 : 0);
    std::vector<Index> blk(static_cast<std::size_t>(len));
    for (Index k = 0; k < len; ++k) blk[static_cast<std::size_t>(k)] = start + k;
    blocks.push_back(std::move(blk));
    start += len;
  }
  return Partition(dim, std::move(blocks));
}

LocalizedResult localized_denoise(const SpectralBasis& basis, const Partition& rows, const Partition& cols,
                                  const DenoiseOptions& opts) {
  const Index p = basis.U.rows();
  const Index n = basis.V.rows();
  if (rows.dim() != p) throw InvalidArgument("row partition dimension does not match the matrix");
  if (cols.dim() != n) throw InvalidArgument("column partition dimension does not match the matrix");

  LocalizedResult res;
  res.spikes = basis.spikes;
  res.X_hat = Matrix::Zero(p, n);
  if (basis.spikes.rank() == 0) {
    res.rank_zero = true;
    return res;
  }
  // Selections give the same Gram matrices and traces as the square
  // projections; trace_weight still normalizes by p and n.
  double total = 0.0;
  for (Index i = 0; i < rows.size(); ++i) {
    const WeightOperator omega = rows.selection(i);
    for (Index j = 0; j < cols.size(); ++j) {
      const WeightOperator pi = cols.selection(j);
      CoefficientEstimate est = estimate_coefficients(basis, omega, pi, opts);
      const Matrix tile = reconstruct_block(basis.U, est.B_hat, basis.V, rows.block(i), cols.block(j));
      const auto& ri = rows.block(i);
      const auto& cj = cols.block(j);
      for (std::size_t b = 0; b < cj.size(); ++b) {
        for (std::size_t a = 0; a < ri.size(); ++a) {
          res.X_hat(ri[a], cj[b]) = tile(static_cast<Index>(a), static_cast<Index>(b));
        }
      }
      BlockEstimate be;
      be.row_block = i;
      be.col_block = j;
      be.B_hat = std::move(est.B_hat);
      be.amse_estimate = est.amse.value;
      be.amse_clamped = est.amse.clamped;
      be.clipped_components = est.geometry.clipped;
      total += be.amse_estimate;
      res.blocks.push_back(std::move(be));
    }
  }
  res.amse_estimate = total;
  return res;
}

LocalizedResult localized_denoise(const MatrixRef& Y, const Partition& rows, const Partition& cols,
                                  const DenoiseOptions& opts) {
  if (rows.dim() != Y.rows()) throw InvalidArgument("row partition dimension does not match the matrix");
  if (cols.dim() != Y.cols()) throw InvalidArgument("column partition dimension does not match the matrix");
  return localized_denoise(spectral_basis(Y, opts.rank, opts.svd), rows, cols, opts);
}

}  // namespace sdn
