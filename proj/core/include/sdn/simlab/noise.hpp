#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sdn/types.hpp"

namespace sdn::simlab {

enum class NoiseDistribution { gaussian, rademacher, student_t };

struct NoiseSpec {
  NoiseDistribution dist = NoiseDistribution::gaussian;
  double df = 0.0;              // student_t only
  std::optional<double> scale;  // per-entry standard deviation, default 1/sqrt(n)
  std::uint64_t seed = 0;
};

// Student t with df <= 2 has no variance; it is drawn without normalization.
bool infinite_variance(const NoiseSpec& spec);

// Entries filled column by column from one counter-based stream.
Matrix gen_noise(const NoiseSpec& spec, Index p, Index n);

std::string to_string(NoiseDistribution d);
NoiseDistribution parse_distribution(const std::string& name);

}  // namespace sdn::simlab
