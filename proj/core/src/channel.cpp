#include "rfeh/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rfeh/rng.hpp"

namespace rfeh {

namespace {
// Guards accidental resource exhaustion; far above any practical array size.
constexpr std::size_t kMaxAntennas = 1024;
}  // namespace

void ChannelConfig::validate() const {
  if (num_antennas < 1) {
    throw std::invalid_argument("ChannelConfig: num_antennas must be >= 1");
  }
  if (num_antennas > kMaxAntennas) {
    throw std::invalid_argument("ChannelConfig: num_antennas must be <= 1024");
  }
  if (!(path_loss > 0.0) || !std::isfinite(path_loss)) {
    throw std::invalid_argument("ChannelConfig: path_loss must be positive and finite");
  }
  if (!(noise_variance_w >= 0.0) || !std::isfinite(noise_variance_w)) {
    throw std::invalid_argument("ChannelConfig: noise_variance_w must be >= 0 and finite");
  }
}

void SignalModel::validate() const {
  if (!(transmit_power_w >= 0.0) || !std::isfinite(transmit_power_w)) {
    throw std::invalid_argument("SignalModel: transmit_power_w must be >= 0 and finite");
  }
}

double harmonic_number(std::size_t k) {
  double sum = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    sum += 1.0 / static_cast<double>(i);
  }
  return sum;
}

void sample_channel_into(const ChannelConfig& config,
                         std::uint64_t seed,
                         std::uint64_t trial_index,
                         ChannelRealization& out) {
  config.validate();
  SplitMix64 rng = trial_stream(seed, trial_index);
  // Total variance per coefficient equals the path loss: E[|h_k|^2] = PL.
  const double component_sigma = std::sqrt(config.path_loss * 0.5);
  out.coefficients.resize(config.num_antennas);
  for (auto& h : out.coefficients) {
    const auto [re, im] = rng.next_gaussian_pair();
    h = std::complex<double>(component_sigma * re, component_sigma * im);
  }
}

ChannelRealization sample_channel(const ChannelConfig& config,
                                  std::uint64_t seed,
                                  std::uint64_t trial_index) {
  ChannelRealization out;
  sample_channel_into(config, seed, trial_index, out);
  return out;
}

ChannelStatistics mean_channel_statistics(const ChannelConfig& config) {
  config.validate();
  if (config.distribution != FadingDistribution::Rayleigh) {
    throw std::invalid_argument("mean_channel_statistics: unsupported fading distribution");
  }
  const double k = static_cast<double>(config.num_antennas);
  const double pl = config.path_loss;
  // |h_k|^2 is exponential with mean PL, |h_k| is Rayleigh with mean
  // sqrt(PL * pi / 4); cross terms E[|h_i||h_j|] = PL * pi/4 for i != j.
  ChannelStatistics stats;
  stats.mean_total_power = k * pl;
  stats.mean_amplitude_sum_sq = k * pl + k * (k - 1.0) * pl * (std::numbers::pi / 4.0);
  stats.mean_max_power = pl * harmonic_number(config.num_antennas);
  return stats;
}

}  // namespace rfeh
