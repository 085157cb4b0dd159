#pragma once

#include <array>
#include <cstdint>

namespace sdn::simlab {

std::uint64_t splitmix64(std::uint64_t x);

// Seed of replicate `index` under base seed `base`:
// splitmix64(base + 0x9E3779B97F4A7C15 * (index + 1)).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

// Counter-based stream: key from the seed, counter from (block, stream id).
// Every distribution is implemented here so that draws are identical across
// compilers and standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // Uniform on the open interval (0, 1).
  double uniform();
  double normal();
  double rademacher();
  // Gamma(shape, scale 1), Marsaglia-Tsang.
  double gamma(double shape);
  // Student t with df degrees of freedom (not variance-normalized).
  double student_t(double df);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int pos_ = 4;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sdn::simlab
