#pragma once

#include <span>

#include "sdn/types.hpp"
#include "sdn/weights.hpp"

namespace sdn::simlab {

// ||Omega (X_hat - X) Pi^T||_F / ||Omega X Pi^T||_F; identity weights when null.
double relative_error(const MatrixRef& X_hat, const MatrixRef& X, const WeightOperator* omega = nullptr,
                      const WeightOperator* pi = nullptr);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
  double min = 0.0;
  double max = 0.0;
  double stderr_mean() const;
};

// Fold in the given order; the result depends only on the order of values.
Summary summarize(std::span<const double> values);

}  // namespace sdn::simlab
