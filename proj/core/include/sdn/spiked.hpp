#pragma once

#include <optional>
#include <span>

#include "sdn/types.hpp"

namespace sdn {

// Aspect ratio gamma = p / n of the observed matrix.
class AspectRatio {
 public:
  explicit AspectRatio(double gamma);
  static AspectRatio of(Index rows, Index cols);

  double value() const noexcept { return gamma_; }
  // Asymptotic top singular value of pure noise, 1 + sqrt(gamma).
  double bulk_edge() const noexcept;
  // Smallest detectable population singular value, gamma^(1/4).
  double detection_threshold() const noexcept;

 private:
  double gamma_;
};

struct Cosines {
  double c = 0.0;
  double c_tilde = 0.0;
  double s = 1.0;
  double s_tilde = 1.0;
};

struct SpikeParams {
  AspectRatio gamma{1.0};
  Vector lambda;
  Vector t;
  Vector c;
  Vector c_tilde;
  Vector s;
  Vector s_tilde;

  Index rank() const noexcept { return lambda.size(); }
};

double forward_singular_value(double t, AspectRatio gamma);
double invert_singular_value(double lambda, AspectRatio gamma);
Cosines cosines(double t, AspectRatio gamma);

// Number of values strictly above 1 + sqrt(gamma) + margin.
Index naive_rank(std::span<const double> singular_values, AspectRatio gamma, double margin = 0.0);

// With no rank given, uses naive_rank with margin 0. Exact ties in lambda are
// kept as separate components; the limit theory assumes distinct values.
SpikeParams estimate_spike_params(std::span<const double> singular_values, AspectRatio gamma,
                                  std::optional<Index> rank = std::nullopt);

}  // namespace sdn
