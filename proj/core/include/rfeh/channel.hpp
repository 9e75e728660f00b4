#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace rfeh {

enum class FadingDistribution { Rayleigh };

/// Flat-fading channel parameters for a K-antenna receiver. `path_loss` is
/// the mean channel power gain E[|h_k|^2]; the noise variance is carried for
/// model completeness but enters no power formula.
struct ChannelConfig {
  std::size_t num_antennas = 1;
  double path_loss = 1e-3;
  double noise_variance_w = 0.0;
  FadingDistribution distribution = FadingDistribution::Rayleigh;

  /// Throws std::invalid_argument on K < 1, K > 1024, non-positive path
  /// loss, or negative noise variance.
  void validate() const;
};

/// One draw of the K complex channel coefficients h_k.
struct ChannelRealization {
  std::vector<std::complex<double>> coefficients;

  std::size_t size() const { return coefficients.size(); }
};

/// Transmit-side signal model. The transmitted symbol is unit power, so the
/// mean received power per branch is transmit_power_w * path_loss.
struct SignalModel {
  double transmit_power_w = 1.0;
  static constexpr double symbol_power = 1.0;

  void validate() const;
};

/// Closed-form Rayleigh expectations used as the analytic oracle for the
/// Monte Carlo engine.
struct ChannelStatistics {
  double mean_total_power;        // E[sum_k |h_k|^2]
  double mean_amplitude_sum_sq;   // E[(sum_k |h_k|)^2]
  double mean_max_power;          // E[max_k |h_k|^2]
};

/// K-th harmonic number, sum_{i=1..K} 1/i.
double harmonic_number(std::size_t k);

/// Draws K i.i.d. circularly-symmetric complex Gaussian coefficients with
/// E[|h_k|^2] = path_loss, so |h_k| is Rayleigh. A fixed (seed, trial_index,
/// config) triple yields bit-identical output regardless of call order or
/// parallelism.
ChannelRealization sample_channel(const ChannelConfig& config,
                                  std::uint64_t seed,
                                  std::uint64_t trial_index);

/// Same as sample_channel, reusing the caller's buffer.
void sample_channel_into(const ChannelConfig& config,
                         std::uint64_t seed,
                         std::uint64_t trial_index,
                         ChannelRealization& out);

/// Analytic means for the Rayleigh model:
///   E[sum |h_k|^2]   = K * PL
///   E[(sum |h_k|)^2] = K * PL + K(K-1) * PL * pi/4
///   E[max |h_k|^2]   = PL * H_K    (max of K i.i.d. exponentials)
/// Throws std::invalid_argument for non-Rayleigh distributions.
ChannelStatistics mean_channel_statistics(const ChannelConfig& config);

}  // namespace rfeh
