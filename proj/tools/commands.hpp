#pragma once

// The rfehsim subcommands. Each throws ConfigError / std::invalid_argument /
// std::domain_error for user mistakes and IoError for environment failures;
// the entry point maps those onto the exit-code contract.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "config.hpp"

namespace rfehsim {

struct GlobalOptions {
  RunConfig config;
  std::string out_path;  // empty -> stdout
  rfeh::EstimateMode mode = rfeh::EstimateMode::Analytic;
  unsigned threads = 0;  // 0 -> hardware concurrency
};

struct OptimizeArgs {
  std::vector<std::complex<double>> channel;  // explicit coefficients; empty -> sample one
  std::size_t num_antennas = 0;               // antenna count when sampling (0 -> config's first)
  std::uint64_t trial_index = 0;              // which trial's channel to sample
  double efficiency = 0.0;                    // 0 -> config's eta
  double transmit_power_w = 1.0;
  double beta_w = 0.0;
  double fixed_consumption_w = 0.0;
  double budget = 1.0;
};

// Monte Carlo sweep over (technique, K, P_t); CSV or pretty table.
void cmd_sweep(const GlobalOptions& options);

// Closed-form curves on the same grid; CSV or pretty table.
void cmd_analytic(const GlobalOptions& options);

// Zero crossing of one technique's mean net power.
void cmd_boundary(const GlobalOptions& options, rfeh::CombinerKind technique,
                  std::size_t num_antennas, double bracket_low_w, double bracket_high_w);

// Meeting point of two techniques' mean net powers.
void cmd_crossover(const GlobalOptions& options, rfeh::CombinerKind technique_a,
                   rfeh::CombinerKind technique_b, std::size_t num_antennas,
                   double bracket_low_w, double bracket_high_w);

// Numeric weight optimization on one channel, reported against closed form.
void cmd_optimize(const GlobalOptions& options, const OptimizeArgs& args);

}  // namespace rfehsim
