#include "sdn/simlab/noise.hpp"

#include <cmath>

#include "sdn/errors.hpp"
#include "sdn/simlab/rng.hpp"

namespace sdn::simlab {

bool infinite_variance(const NoiseSpec& spec) {
  return spec.dist == NoiseDistribution::student_t && spec.df <= 2.0;
}

Matrix gen_noise(const NoiseSpec& spec, Index p, Index n) {
  if (p <= 0 || n <= 0) throw InvalidArgument("noise dimensions must be positive");
  if (spec.dist == NoiseDistribution::student_t && !(spec.df > 0.0)) {
    throw InvalidArgument("degrees of freedom must be positive");
  }
  const double sd = spec.scale.value_or(1.0 / std::sqrt(static_cast<double>(n)));
  if (!(sd >= 0.0) || !std::isfinite(sd)) throw InvalidArgument("noise scale must be finite and nonnegative");
  RandomStream rng(spec.seed);
  Matrix G(p, n);
  double* data = G.data();
  const Index total = p * n;
  switch (spec.dist) {
    case NoiseDistribution::gaussian:
      for (Index k = 0; k < total; ++k) data[k] = sd * rng.normal();
      break;
    case NoiseDistribution::rademacher:
      for (Index k = 0; k < total; ++k) data[k] = sd * rng.rademacher();
      break;
    case NoiseDistribution::student_t: {
      const double norm = spec.df > 2.0 ? std::sqrt((spec.df - 2.0) / spec.df) : 1.0;
      for (Index k = 0; k < total; ++k) data[k] = sd * norm * rng.student_t(spec.df);
      break;
    }
  }
  return G;
}

std::string to_string(NoiseDistribution d) {
  switch (d) {
    case NoiseDistribution::gaussian:
      return "gaussian";
    case NoiseDistribution::rademacher:
      return "rademacher";
    case NoiseDistribution::student_t:
      return "student_t";
  }
  return "unknown";
}

NoiseDistribution parse_distribution(const std::string& name) {
  if (name == "gaussian") return NoiseDistribution::gaussian;
  if (name == "rademacher") return NoiseDistribution::rademacher;
  if (name == "student_t" || name == "t") return NoiseDistribution::student_t;
  throw InvalidArgument("unknown noise distribution '" + name + "'");
}

}  // namespace sdn::simlab
