#include "rfeh/power.hpp"

#include <cmath>
#include <stdexcept>

namespace rfeh {

void HarvesterConfig::validate() const {
  if (!(efficiency > 0.0) || efficiency > 1.0) {
    throw std::invalid_argument("HarvesterConfig: efficiency must be in (0, 1]");
  }
  if (!(harvest_time_s > 0.0) || !std::isfinite(harvest_time_s)) {
    throw std::invalid_argument("HarvesterConfig: harvest_time_s must be positive and finite");
  }
}

void ConsumptionProfile::validate() const {
  if (!(beta_w >= 0.0) || !std::isfinite(beta_w)) {
    throw std::invalid_argument("ConsumptionProfile: beta_w must be >= 0 and finite");
  }
  if (!(per_branch_w >= 0.0) || !std::isfinite(per_branch_w)) {
    throw std::invalid_argument("ConsumptionProfile: per_branch_w must be >= 0 and finite");
  }
  if (!(summation_w >= 0.0) || !std::isfinite(summation_w)) {
    throw std::invalid_argument("ConsumptionProfile: summation_w must be >= 0 and finite");
  }
  if (kind == CombinerKind::SC && beta_w != 0.0) {
    throw std::invalid_argument(
        "ConsumptionProfile: selection combining generates no combining signals, beta_w must be 0");
  }
}

double received_power_branch(double transmit_power_w, std::complex<double> coefficient) {
  if (!(transmit_power_w >= 0.0)) {
    throw std::invalid_argument("received_power_branch: transmit power must be >= 0");
  }
  return transmit_power_w * std::norm(coefficient);
}

double harvested_power_branch(double efficiency, double transmit_power_w,
                              std::complex<double> weight,
                              std::complex<double> coefficient) {
  if (!(efficiency > 0.0) || efficiency > 1.0) {
    throw std::invalid_argument("harvested_power_branch: efficiency must be in (0, 1]");
  }
  if (!(transmit_power_w >= 0.0)) {
    throw std::invalid_argument("harvested_power_branch: transmit power must be >= 0");
  }
  return efficiency * transmit_power_w * std::norm(weight * coefficient);
}

double harvested_power_total(double efficiency, double transmit_power_w,
                             const ChannelRealization& channel,
                             const WeightVector& weights) {
  if (!(efficiency > 0.0) || efficiency > 1.0) {
    throw std::invalid_argument("harvested_power_total: efficiency must be in (0, 1]");
  }
  if (!(transmit_power_w >= 0.0)) {
    throw std::invalid_argument("harvested_power_total: transmit power must be >= 0");
  }
  return efficiency * transmit_power_w * combined_signal_power(channel, weights);
}

double max_harvestable_power(double efficiency, double transmit_power_w,
                             const ChannelRealization& channel) {
  if (!(efficiency > 0.0) || efficiency > 1.0) {
    throw std::invalid_argument("max_harvestable_power: efficiency must be in (0, 1]");
  }
  if (!(transmit_power_w >= 0.0)) {
    throw std::invalid_argument("max_harvestable_power: transmit power must be >= 0");
  }
  double channel_power = 0.0;
  for (const auto& h : channel.coefficients) channel_power += std::norm(h);
  return efficiency * transmit_power_w * channel_power;
}

double fixed_consumption_w(const ConsumptionProfile& profile, std::size_t num_antennas) {
  profile.validate();
  if (num_antennas == 0) {
    throw std::invalid_argument("fixed_consumption_w: num_antennas must be >= 1");
  }
  if (profile.kind == CombinerKind::SC) {
    return profile.per_branch_w;  // only the selected branch draws
  }
  return static_cast<double>(num_antennas) * profile.per_branch_w + profile.summation_w;
}

ConsumptionBreakdown consumption_total(const ConsumptionProfile& profile,
                                       const WeightVector& weights,
                                       std::size_t num_antennas,
                                       std::optional<std::size_t> selected_branch) {
  profile.validate();
  if (num_antennas == 0) {
    throw std::invalid_argument("consumption_total: num_antennas must be >= 1");
  }
  if (weights.weights.size() != num_antennas) {
    throw std::invalid_argument("consumption_total: weight/antenna count mismatch");
  }

  ConsumptionBreakdown out;
  if (profile.kind == CombinerKind::SC) {
    if (!selected_branch.has_value()) {
      throw std::invalid_argument("consumption_total: selection combining needs a selected branch");
    }
    if (*selected_branch >= num_antennas) {
      throw std::invalid_argument("consumption_total: selected branch out of range");
    }
    out.weights_w = 0.0;  // beta_sc = 0 by invariant
  } else {
    out.weights_w = profile.beta_w * weights.weight_power();
  }
  out.fixed_w = fixed_consumption_w(profile, num_antennas);
  return out;
}

PowerReport net_power(const HarvesterConfig& harvester, double transmit_power_w,
                      const ChannelRealization& channel, const WeightVector& weights,
                      const ConsumptionProfile& profile,
                      std::optional<std::size_t> selected_branch) {
  harvester.validate();

  PowerReport report;
  report.harvested_w =
      harvested_power_total(harvester.efficiency, transmit_power_w, channel, weights);
  const ConsumptionBreakdown consumption =
      consumption_total(profile, weights, channel.size(), selected_branch);
  report.consumption_weights_w = consumption.weights_w;
  report.consumption_fixed_w = consumption.fixed_w;
  report.net_w = report.harvested_w - report.consumption_weights_w - report.consumption_fixed_w;
  report.energy_j = harvester.harvest_time_s * report.harvested_w;
  return report;
}

double harvested_energy(const PowerReport& report, double harvest_time_s) {
  if (!(harvest_time_s > 0.0) || !std::isfinite(harvest_time_s)) {
    throw std::invalid_argument("harvested_energy: harvest_time_s must be positive and finite");
  }
  return harvest_time_s * report.harvested_w;
}

}  // namespace rfeh
