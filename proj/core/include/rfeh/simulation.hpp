#pragma once

// Monte Carlo engine and matching closed-form expectations: mean harvested
// and mean net power versus transmit power per combining technique, plus
// bisection searches for no-harvesting boundaries and technique crossovers.

#include <cstdint>
#include <vector>

#include "rfeh/channel.hpp"
#include "rfeh/combining.hpp"
#include "rfeh/power.hpp"

namespace rfeh {

enum class EstimateMode { Analytic, MonteCarlo };
const char* to_string(EstimateMode mode);

// One experiment: a channel model, a harvester, consumption profiles for the
// requested techniques, a transmit-power grid, and the Monte Carlo budget.
// Trials are indexed 0..trials-1; all techniques share the realization drawn
// at a given trial index (common random numbers), and a fixed seed yields
// bit-identical results regardless of thread count.
struct ExperimentSpec {
  ChannelConfig channel_config;
  HarvesterConfig harvester;
  std::vector<ConsumptionProfile> profiles;
  std::vector<CombinerKind> techniques;
  std::vector<double> transmit_power_grid_w;
  std::uint64_t trials = 1000000;
  std::uint64_t seed = 1;

  void validate() const;
  const ConsumptionProfile& profile_for(CombinerKind kind) const;
};

// Closed-form Rayleigh means for one (technique, transmit power) point.
struct MeanPowers {
  double mean_harvested_w = 0.0;
  double mean_net_w = 0.0;
};

// Expected harvested and net power under the Rayleigh model:
//   MRC: eta P_t K PL;  EGC: eta P_t PL (1 + (K-1) pi/4);  SC: eta P_t PL H_K,
// with net = harvested - beta - P_d (unit weight power for every technique).
MeanPowers analytic_mean_powers(CombinerKind technique, const ChannelConfig& config,
                                double efficiency, double transmit_power_w,
                                const ConsumptionProfile& profile);

// One sweep row: sampled and closed-form means for a (technique, P_t) pair.
// The arithmetic identity mean_net = mean_harvested - beta - P_d holds
// exactly, and ci95_halfwidth covers both means (they differ by a constant).
struct SweepPoint {
  CombinerKind technique = CombinerKind::MRC;
  double transmit_power_w = 0.0;
  double mean_harvested_w = 0.0;
  double mean_net_w = 0.0;
  double ci95_halfwidth_w = 0.0;
  double analytic_mean_harvested_w = 0.0;
  double analytic_mean_net_w = 0.0;
  std::uint64_t trials_used = 0;
};

struct SweepResult {
  std::vector<SweepPoint> points;  // technique-major, grid order within
  std::size_t num_antennas = 0;
  std::uint64_t seed = 0;
};

// Runs the Monte Carlo sweep. threads = 0 picks the hardware concurrency;
// any thread count produces byte-identical results (trials are accumulated
// in fixed-size blocks that are reduced in index order).
SweepResult run_sweep(const ExperimentSpec& spec, unsigned threads = 0);

// A Monte Carlo scalar with its 95% normal-approximation half-width.
struct Estimate {
  double value_w = 0.0;
  double ci95_halfwidth_w = 0.0;
  std::uint64_t trials_used = 0;
};

// Mean net power of one technique at one transmit power (full MC pass).
Estimate estimate_mean_net(CombinerKind technique, const ExperimentSpec& spec,
                           double transmit_power_w, unsigned threads = 0);

// Mean of net_a - net_b on common random numbers (full MC pass).
Estimate estimate_mean_net_difference(CombinerKind technique_a, CombinerKind technique_b,
                                      const ExperimentSpec& spec, double transmit_power_w,
                                      unsigned threads = 0);

// A bisection answer: the located transmit power and the mean (analytic) or
// estimated mean (Monte Carlo) net power remaining there.
struct RootResult {
  double transmit_power_w = 0.0;
  double residual_w = 0.0;
};

// Transmit power where a technique's mean net power crosses zero. Analytic
// mode bisects the closed-form mean to floating-point resolution; Monte
// Carlo mode bisects sampled means and stops once the confidence interval
// at the midpoint no longer excludes zero (or the bracket is under 1 mW).
// Throws std::domain_error("no zero crossing in bracket") when the bracket
// endpoints do not straddle zero.
RootResult find_no_harvesting_boundary(CombinerKind technique, const ExperimentSpec& spec,
                                       EstimateMode mode, double bracket_low_w,
                                       double bracket_high_w, unsigned threads = 0);

// Transmit power where two techniques' mean net powers meet.
struct CrossoverQuery {
  CombinerKind technique_a = CombinerKind::SC;
  CombinerKind technique_b = CombinerKind::MRC;
  double bracket_low_w = 0.0;
  double bracket_high_w = 0.0;
  EstimateMode mode = EstimateMode::Analytic;

  void validate() const;
};

RootResult find_crossover(const CrossoverQuery& query, const ExperimentSpec& spec,
                          unsigned threads = 0);

}  // namespace rfeh
