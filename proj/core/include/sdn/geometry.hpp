#pragma once

#include <vector>

#include "sdn/spiked.hpp"
#include "sdn/types.hpp"
#include "sdn/weights.hpp"

namespace sdn {

struct WeightedGeometry {
  Index rank = 0;
  Vector t;
  Matrix D, D_tilde;
  Matrix E, E_tilde;
  // Rows index empirical directions, columns index population directions.
  Matrix C, C_tilde;
  double mu = 1.0;
  double nu = 1.0;
  Vector alpha, beta;
  // Components whose alpha or beta hit the floor.
  std::vector<Index> clipped;
};

struct GeometryOptions {
  double alpha_floor = 1e-8;
  double min_cosine = 1e-6;
};

// tr(Omega^T Omega) / dim.
double trace_weight(const WeightOperator& omega, Index dim);

// Entry (j,k) = <Omega v_j, Omega v_k>; columns must be unit norm.
Matrix weighted_gram(const MatrixRef& vectors, const WeightOperator& omega);

WeightedGeometry recover_population_geometry(const Matrix& D, const Matrix& D_tilde, const SpikeParams& spikes,
                                             double mu, double nu, const GeometryOptions& opts = {});

}  // namespace sdn
