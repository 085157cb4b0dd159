#pragma once

#include "sdn/types.hpp"

namespace sdn {

struct SingularTriplets {
  Matrix U;
  Vector values;
  Matrix V;
};

struct SvdOptions {
  // Matrices with min(p, n) at or below this go through a dense SVD.
  Index dense_cutoff = 400;
  // Convergence: ||Y^T u - s v|| <= tolerance * s_max.
  double tolerance = 1e-10;
};

// Leading k singular triplets (k <= min(p, n)). Deterministic for fixed input.
SingularTriplets leading_triplets(const MatrixRef& Y, Index k, const SvdOptions& opts = {});

// All triplets with singular value strictly above threshold, plus at least
// min_count leading triplets in any case. The returned values are descending.
SingularTriplets triplets_above(const MatrixRef& Y, double threshold, Index min_count,
                                const SvdOptions& opts = {});

// Largest singular value only.
double operator_norm(const MatrixRef& Y, const SvdOptions& opts = {});

}  // namespace sdn
