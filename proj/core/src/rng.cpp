#include "dwp/rng.hpp"

namespace dwp {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_(seed ^ splitmix64(stream * 0xD1B54A32D192ED03ull + 1)) {}

std::uint64_t CounterRng::bits(std::uint64_t index) const noexcept {
  return splitmix64(key_ + (index + 1) * 0x9E3779B97F4A7C15ull);
}

double CounterRng::uniform01(std::uint64_t index) const noexcept {
  return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
}

}  // namespace dwp
