#pragma once

#include <cstdint>
#include <random>

namespace wreathkit {

// Seeded engine used everywhere randomness enters a report.
using Rng = std::mt19937_64;

// Uniform integer in [0, bound). std::uniform_int_distribution is not
// specified bit-for-bit across standard libraries; this rejection sampler is,
// so a seed reproduces the same report everywhere.
template <class Engine>
std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace wreathkit
