#pragma once

// Power and energy accounting for a multi-antenna RF energy harvester:
// received and harvested power, circuit consumption, and the net obtained
// power that remains after the combiner's own draw is paid.

#include <complex>
#include <cstddef>
#include <optional>

#include "rfeh/channel.hpp"
#include "rfeh/combining.hpp"

namespace rfeh {

// RF-to-DC conversion efficiency and the harvesting slot length.
struct HarvesterConfig {
  double efficiency = 1.0;       // eta, dimensionless in (0, 1]
  double harvest_time_s = 1.0;   // T > 0

  void validate() const;
};

// Circuit-consumption parameters of one combining technique.
//
// beta_w scales the combiner's weight power P_w = sum |w_k|^2; per_branch_w
// is the constant draw of one antenna branch (P_f, identical across branches);
// summation_w is the summation unit's draw (P_s). Selection combining
// generates no combining signals, so its beta must be zero, and its fixed
// draw is the selected branch's per_branch_w alone.
struct ConsumptionProfile {
  double beta_w = 0.0;
  double per_branch_w = 0.0;
  double summation_w = 0.0;
  CombinerKind kind = CombinerKind::MRC;

  void validate() const;
};

// One realization's power ledger. The identity
//   net_w = harvested_w - consumption_weights_w - consumption_fixed_w
// holds exactly (same floating-point expression, not a reconstruction), and
// energy_j = harvest_time * harvested_w.
struct PowerReport {
  double harvested_w = 0.0;
  double consumption_weights_w = 0.0;  // beta * P_w
  double consumption_fixed_w = 0.0;    // P_d
  double net_w = 0.0;
  double energy_j = 0.0;
};

// P_t * |h_k|^2: power arriving at one antenna branch.
double received_power_branch(double transmit_power_w, std::complex<double> coefficient);

// eta * P_t * |w_k h_k|^2: power one weighted branch contributes alone.
double harvested_power_branch(double efficiency, double transmit_power_w,
                              std::complex<double> weight,
                              std::complex<double> coefficient);

// eta * P_t * |sum w_k h_k|^2: power harvested from the combined signal.
double harvested_power_total(double efficiency, double transmit_power_w,
                             const ChannelRealization& channel,
                             const WeightVector& weights);

// eta * P_t * sum |h_k|^2: the Schwarz upper bound on harvested power for
// any unit-budget weight vector; attained by matched (MRC) weights.
double max_harvestable_power(double efficiency, double transmit_power_w,
                             const ChannelRealization& channel);

// Fixed circuit draw P_d of one technique: K * P_f + P_s for the co-phasing
// combiners, the single active branch's P_f for selection combining.
double fixed_consumption_w(const ConsumptionProfile& profile, std::size_t num_antennas);

// Consumption split (beta * P_w, P_d). For MRC/EGC, P_d = K * P_f + P_s.
// For SC, only the selected branch draws power: returns (0, P_f) and
// requires selected_branch to identify it.
struct ConsumptionBreakdown {
  double weights_w = 0.0;  // beta * P_w
  double fixed_w = 0.0;    // P_d
};
ConsumptionBreakdown consumption_total(const ConsumptionProfile& profile,
                                       const WeightVector& weights,
                                       std::size_t num_antennas,
                                       std::optional<std::size_t> selected_branch = std::nullopt);

// Full ledger for one realization: harvested power, its consumption split,
// the (possibly negative) net obtained power, and the slot energy.
PowerReport net_power(const HarvesterConfig& harvester, double transmit_power_w,
                      const ChannelRealization& channel, const WeightVector& weights,
                      const ConsumptionProfile& profile,
                      std::optional<std::size_t> selected_branch = std::nullopt);

// T * harvested: energy accumulated over a slot of length T seconds.
double harvested_energy(const PowerReport& report, double harvest_time_s);

}  // namespace rfeh
