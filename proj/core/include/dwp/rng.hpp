#pragma once

#include <cstdint>

namespace dwp {

/// Counter-based generator: variate i is splitmix64(key + (i + 1) * golden),
/// with key = seed ^ splitmix64(stream-derived constant). The output depends
/// only on (seed, stream, index), so initial states reproduce on any platform
/// and independently of generation order.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t bits(std::uint64_t index) const noexcept;

  /// Uniform double in [0, 1): top 53 bits scaled by 2^-53.
  double uniform01(std::uint64_t index) const noexcept;

  /// Uniform double in [lo, hi).
  double uniform(std::uint64_t index, double lo, double hi) const noexcept {
    return lo + (hi - lo) * uniform01(index);
  }

 private:
  std::uint64_t key_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace dwp
