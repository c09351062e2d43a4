#pragma once

#include <cstdint>
#include <random>

namespace epiflat {

// splitmix64 finalizer. Bijective on 64-bit words; used to decorrelate seeds
// and to derive child stream seeds.
std::uint64_t mix64(std::uint64_t x);

// Child seed for stream (a, b) under a master seed:
//   mix64(mix64(mix64(master) + a) + b)
// This exact rule is part of the reproducibility contract; experiment outputs
// are keyed to it.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);

/// Deterministic random stream. std::mt19937_64 supplies the raw words, but
/// bounded integers and reals are derived by hand because the standard
/// distribution templates are implementation-defined and would break
/// cross-platform reproducibility.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(mix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased draw from [0, bound) by rejection. bound must be >= 1.
  std::uint64_t uniform_index(std::uint64_t bound);

  // Uniform double in [0, 1) using the top 53 bits of one word.
  double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace epiflat
