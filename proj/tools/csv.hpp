#pragma once

// CSV emission for sweep and root-finding results: pinned headers, LF line
// endings, '.' decimal separator, and shortest-round-trip number formatting.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "rfeh/simulation.hpp"

namespace rfehsim {

inline constexpr std::string_view kSweepCsvHeader =
    "technique,K,P_t_W,mean_harvested_W,mean_net_W,ci95_W,"
    "analytic_harvested_W,analytic_net_W,trials,seed";

inline constexpr std::string_view kAnalyticCsvHeader =
    "technique,K,P_t_W,analytic_harvested_W,analytic_net_W";

inline constexpr std::string_view kRootCsvHeader =
    "query,technique_a,technique_b,K,mode,P_t_root_W,residual_W";

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

void write_sweep_header(std::ostream& out);
void write_sweep_row(std::ostream& out, const rfeh::SweepPoint& point,
                     std::size_t num_antennas, std::uint64_t seed);

void write_analytic_header(std::ostream& out);
void write_analytic_row(std::ostream& out, const rfeh::SweepPoint& point,
                        std::size_t num_antennas);

void write_root_header(std::ostream& out);
void write_root_row(std::ostream& out, std::string_view query, std::string_view technique_a,
                    std::string_view technique_b, std::size_t num_antennas,
                    rfeh::EstimateMode mode, const rfeh::RootResult& root);

}  // namespace rfehsim
