#include "csv.hpp"

#include <charconv>
#include <ostream>

namespace rfehsim {

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;  // a 64-byte buffer always fits the shortest representation
  return std::string(buffer, end);
}

void write_sweep_header(std::ostream& out) { out << kSweepCsvHeader << '\n'; }

void write_sweep_row(std::ostream& out, const rfeh::SweepPoint& point,
                     std::size_t num_antennas, std::uint64_t seed) {
  out << rfeh::to_string(point.technique) << ',' << num_antennas << ','
      << format_double(point.transmit_power_w) << ','
      << format_double(point.mean_harvested_w) << ',' << format_double(point.mean_net_w)
      << ',' << format_double(point.ci95_halfwidth_w) << ','
      << format_double(point.analytic_mean_harvested_w) << ','
      << format_double(point.analytic_mean_net_w) << ',' << point.trials_used << ','
      << seed << '\n';
}

void write_analytic_header(std::ostream& out) { out << kAnalyticCsvHeader << '\n'; }

void write_analytic_row(std::ostream& out, const rfeh::SweepPoint& point,
                        std::size_t num_antennas) {
  out << rfeh::to_string(point.technique) << ',' << num_antennas << ','
      << format_double(point.transmit_power_w) << ','
      << format_double(point.analytic_mean_harvested_w) << ','
      << format_double(point.analytic_mean_net_w) << '\n';
}

void write_root_header(std::ostream& out) { out << kRootCsvHeader << '\n'; }

void write_root_row(std::ostream& out, std::string_view query, std::string_view technique_a,
                    std::string_view technique_b, std::size_t num_antennas,
                    rfeh::EstimateMode mode, const rfeh::RootResult& root) {
  out << query << ',' << technique_a << ',' << technique_b << ',' << num_antennas << ','
      << rfeh::to_string(mode) << ',' << format_double(root.transmit_power_w) << ','
      << format_double(root.residual_w) << '\n';
}

}  // namespace rfehsim
