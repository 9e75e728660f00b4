#include "rfeh/rng.hpp"

#include <cmath>
#include <numbers>

namespace rfeh {

std::uint64_t mix_bits(std::uint64_t value) {
  value = (value ^ (value >> 30)) * 0xBF58476D1CE4E5B9ull;
  value = (value ^ (value >> 27)) * 0x94D049BB133111EBull;
  return value ^ (value >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  return mix_bits(state_);
}

double SplitMix64::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::pair<double, double> SplitMix64::next_gaussian_pair() {
  // u1 is shifted into (0, 1] so the log stays finite.
  const double u1 = 1.0 - next_unit();
  const double u2 = next_unit();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial_index) {
  const std::uint64_t a = mix_bits(seed + 0x9E3779B97F4A7C15ull);
  const std::uint64_t b = mix_bits(trial_index + 0xD1B54A32D192ED03ull);
  return SplitMix64(mix_bits(a ^ (b + 0x2545F4914F6CDD1Dull)));
}

}  // namespace rfeh
