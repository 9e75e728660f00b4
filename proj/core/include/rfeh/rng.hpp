#pragma once

#include <cstdint>
#include <utility>

namespace rfeh {

/// Counter-style 64-bit generator (SplitMix64). The state advances by a
/// fixed odd constant and every output is passed through an avalanching
/// finalizer, so any 64-bit value is a valid stream state and a stream is
/// fully determined by it.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next();

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit();

  /// Two independent N(0, 1) draws via Box-Muller. Consumes exactly two
  /// uniforms, so the stream layout is independent of caller bookkeeping.
  std::pair<double, double> next_gaussian_pair();

 private:
  std::uint64_t state_;
};

/// Stateless avalanching bit mixer (the SplitMix64 finalizer).
std::uint64_t mix_bits(std::uint64_t value);

/// Independent stream for one (seed, trial) pair. Trial states are hashed,
/// not offset, so streams of neighbouring trials do not overlap and trials
/// can be evaluated in any order or in parallel.
SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial_index);

}  // namespace rfeh
