#pragma once

#include <vector>

#include "sdn/denoise.hpp"

namespace sdn {

// Disjoint cover of {0, ..., dim-1} by nonempty sorted index sets.
class Partition {
 public:
  Partition(Index dim, std::vector<std::vector<Index>> blocks);
  static Partition single(Index dim);

  Index dim() const noexcept { return dim_; }
  Index size() const noexcept { return static_cast<Index>(blocks_.size()); }
  const std::vector<std::vector<Index>>& blocks() const noexcept { return blocks_; }
  const std::vector<Index>& block(Index i) const { return blocks_.at(static_cast<std::size_t>(i)); }

  // Square 0/1 projection onto block i.
  WeightOperator projection(Index i) const;
  // Rectangular selection of block i; same Gram matrices as the projection.
  WeightOperator selection(Index i) const;

 private:
  Index dim_;
  std::vector<std::vector<Index>> blocks_;
};

// Contiguous blocks, sizes differ by at most one, larger blocks first.
Partition make_equispaced_partition(Index dim, Index num_blocks);

struct BlockEstimate {
  Index row_block = 0;
  Index col_block = 0;
  Matrix B_hat;
  double amse_estimate = 0.0;
  bool amse_clamped = false;
  std::vector<Index> clipped_components;
};

struct LocalizedResult {
  Matrix X_hat;
  double amse_estimate = 0.0;
  bool rank_zero = false;
  SpikeParams spikes;
  std::vector<BlockEstimate> blocks;  // row-block major order
};

LocalizedResult localized_denoise(const MatrixRef& Y, const Partition& rows, const Partition& cols,
                                  const DenoiseOptions& opts = {});
LocalizedResult localized_denoise(const SpectralBasis& basis, const Partition& rows, const Partition& cols,
                                  const DenoiseOptions& opts = {});

}  // namespace sdn
