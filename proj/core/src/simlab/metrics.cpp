#include "sdn/simlab/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sdn/errors.hpp"

namespace sdn::simlab {

double relative_error(const MatrixRef& X_hat, const MatrixRef& X, const WeightOperator* omega,
                      const WeightOperator* pi) {
  if (X_hat.rows() != X.rows() || X_hat.cols() != X.cols()) throw InvalidArgument("relative_error: shape mismatch");
  const WeightOperator id_l = WeightOperator::identity(X.rows());
  const WeightOperator id_r = WeightOperator::identity(X.cols());
  const WeightOperator& l = omega ? *omega : id_l;
  const WeightOperator& r = pi ? *pi : id_r;
  const double den = weighted_squared_norm(X, l, r);
  if (!(den > 0.0)) throw UndefinedMetric("relative error undefined: weighted norm of the reference is zero");
  const Matrix diff = X_hat - X;
  return std::sqrt(weighted_squared_norm(diff, l, r) / den);
}

double Summary::stderr_mean() const { return count > 1 ? std / std::sqrt(static_cast<double>(count)) : 0.0; }

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  s.min = values[0];
  s.max = values[0];
  for (double v : values) {
    sum += v;
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  s.mean = sum / static_cast<double>(s.count);
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

}  // namespace sdn::simlab
