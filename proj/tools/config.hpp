#pragma once

// Experiment configuration for the rfehsim tool: a flat key = value text
// format with one section per combining technique, explicit unit suffixes on
// every power, and a canonical dump that reparses to the same configuration.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rfeh/simulation.hpp"

namespace rfehsim {

// User or configuration mistakes; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem and other environment failures; the CLI maps these to exit 1.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::uint64_t trials = 1000000;
  std::vector<std::size_t> antennas = {2, 8};
  std::vector<rfeh::CombinerKind> techniques = {
      rfeh::CombinerKind::SC, rfeh::CombinerKind::EGC, rfeh::CombinerKind::MRC};
  double path_loss = 1e-3;
  double efficiency = 1.0;
  double harvest_time_s = 1.0;
  double pt_min_w = 0.0;
  double pt_max_w = 3.0;
  double pt_step_w = 0.1;
  std::string format = "csv";  // csv | pretty
  std::vector<rfeh::ConsumptionProfile> profiles;  // one per technique kind

  RunConfig();  // fills the default consumption profiles

  void validate() const;
  rfeh::ConsumptionProfile& profile_for(rfeh::CombinerKind kind);
  const rfeh::ConsumptionProfile& profile_for(rfeh::CombinerKind kind) const;
};

// Parses configuration text over the defaults. Throws ConfigError with a
// line-numbered message on malformed input.
RunConfig parse_config_text(std::string_view text);

// Reads and parses a configuration file. Throws IoError when unreadable.
RunConfig parse_config_file(const std::string& path);

// Canonical text form: stable key order, all powers in watts with
// shortest-round-trip formatting, so dump -> parse -> dump is a fixed point.
std::string dump_config(const RunConfig& config);

// FNV-1a digest of the canonical dump; a provenance fingerprint for logs.
std::uint64_t config_digest(const RunConfig& config);

// The transmit-power grid [pt_min, pt_max] in steps of pt_step.
std::vector<double> make_grid(const RunConfig& config);

// Experiment for one antenna count, drawing everything else from the config.
rfeh::ExperimentSpec make_spec(const RunConfig& config, std::size_t num_antennas);

// Name <-> enum helpers ("sc", "egc", "mrc"; "analytic", "mc").
rfeh::CombinerKind technique_from_string(std::string_view name);
rfeh::EstimateMode mode_from_string(std::string_view name);

// Parses a comma-separated complex list such as "3,4j,1-2j,-0.5+0.25j".
std::vector<std::complex<double>> parse_complex_list(std::string_view text);

// Parses a power value with a mandatory W or mW suffix, returning watts.
double parse_power(std::string_view text, std::string_view key);

}  // namespace rfehsim
