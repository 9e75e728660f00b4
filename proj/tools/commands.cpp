#include "commands.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string_view>

#include "csv.hpp"

namespace rfehsim {

namespace {

// Writes to the --out file when one is given, to stdout otherwise.
class OutputStream {
 public:
  explicit OutputStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot open output file: " + path);
      out_ = &file_;
    }
  }

  std::ostream& get() { return *out_; }

  void finish() {
    out_->flush();
    if (file_.is_open() && !file_) {
      throw IoError("failed writing output file");
    }
  }

 private:
  std::ofstream file_;
  std::ostream* out_ = &std::cout;
};

void print_provenance(const GlobalOptions& options) {
  std::fprintf(stderr, "rfehsim: seed=%" PRIu64 " trials=%" PRIu64 " mode=%s config=%016" PRIx64 "\n",
               options.config.seed, options.config.trials, rfeh::to_string(options.mode),
               config_digest(options.config));
}

void print_pretty_sweep_header(std::ostream& out) {
  char line[192];
  std::snprintf(line, sizeof line, "%-9s %3s %8s %14s %14s %12s %14s %14s %10s\n", "technique",
                "K", "P_t_W", "harvested_W", "net_W", "ci95_W", "an_harv_W", "an_net_W",
                "trials");
  out << line;
}

void print_pretty_sweep_row(std::ostream& out, const rfeh::SweepPoint& p, std::size_t k) {
  char line[192];
  std::snprintf(line, sizeof line,
                "%-9s %3zu %8.4f %14.6e %14.6e %12.4e %14.6e %14.6e %10" PRIu64 "\n",
                rfeh::to_string(p.technique), k, p.transmit_power_w, p.mean_harvested_w,
                p.mean_net_w, p.ci95_halfwidth_w, p.analytic_mean_harvested_w,
                p.analytic_mean_net_w, p.trials_used);
  out << line;
}

std::string format_complex(std::complex<double> z) {
  std::string s = format_double(z.real());
  if (std::signbit(z.imag())) {
    s += '-';
    s += format_double(-z.imag());
  } else {
    s += '+';
    s += format_double(z.imag());
  }
  s += 'j';
  return s;
}

std::string format_weights(const std::vector<std::complex<double>>& weights) {
  std::string s;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (i != 0) s += ", ";
    s += format_complex(weights[i]);
  }
  return s;
}

}  // namespace

void cmd_sweep(const GlobalOptions& options) {
  const RunConfig& config = options.config;
  config.validate();
  print_provenance(options);

  std::vector<rfeh::SweepResult> per_antenna_count;
  per_antenna_count.reserve(config.antennas.size());
  for (const std::size_t k : config.antennas) {
    per_antenna_count.push_back(rfeh::run_sweep(make_spec(config, k), options.threads));
  }

  OutputStream out(options.out_path);
  const bool pretty = config.format == "pretty";
  const std::size_t grid_size =
      per_antenna_count.front().points.size() / config.techniques.size();

  if (pretty) {
    print_pretty_sweep_header(out.get());
  } else {
    write_sweep_header(out.get());
  }
  for (std::size_t ti = 0; ti < config.techniques.size(); ++ti) {
    for (std::size_t ki = 0; ki < config.antennas.size(); ++ki) {
      const rfeh::SweepResult& result = per_antenna_count[ki];
      for (std::size_t g = 0; g < grid_size; ++g) {
        const rfeh::SweepPoint& point = result.points[ti * grid_size + g];
        if (pretty) {
          print_pretty_sweep_row(out.get(), point, result.num_antennas);
        } else {
          write_sweep_row(out.get(), point, result.num_antennas, result.seed);
        }
      }
    }
  }
  out.finish();
}

void cmd_analytic(const GlobalOptions& options) {
  const RunConfig& config = options.config;
  config.validate();
  print_provenance(options);

  const std::vector<double> grid = make_grid(config);
  OutputStream out(options.out_path);
  write_analytic_header(out.get());
  for (const rfeh::CombinerKind technique : config.techniques) {
    const rfeh::ConsumptionProfile& profile = config.profile_for(technique);
    for (const std::size_t k : config.antennas) {
      rfeh::ChannelConfig channel_config;
      channel_config.num_antennas = k;
      channel_config.path_loss = config.path_loss;
      for (const double transmit_power_w : grid) {
        const rfeh::MeanPowers means = rfeh::analytic_mean_powers(
            technique, channel_config, config.efficiency, transmit_power_w, profile);
        rfeh::SweepPoint point;
        point.technique = technique;
        point.transmit_power_w = transmit_power_w;
        point.analytic_mean_harvested_w = means.mean_harvested_w;
        point.analytic_mean_net_w = means.mean_net_w;
        write_analytic_row(out.get(), point, k);
      }
    }
  }
  out.finish();
}

void cmd_boundary(const GlobalOptions& options, rfeh::CombinerKind technique,
                  std::size_t num_antennas, double bracket_low_w, double bracket_high_w) {
  const RunConfig& config = options.config;
  config.validate();
  print_provenance(options);

  const rfeh::ExperimentSpec spec = make_spec(config, num_antennas);
  const rfeh::RootResult root = rfeh::find_no_harvesting_boundary(
      technique, spec, options.mode, bracket_low_w, bracket_high_w, options.threads);

  std::printf("boundary %s K=%zu mode=%s: P_t_root = %#.6g W (residual %#.6g W)\n",
              rfeh::to_string(technique), num_antennas, rfeh::to_string(options.mode),
              root.transmit_power_w, root.residual_w);
  std::fflush(stdout);

  OutputStream out(options.out_path);
  write_root_header(out.get());
  write_root_row(out.get(), "boundary", rfeh::to_string(technique), "", num_antennas,
                 options.mode, root);
  out.finish();
}

void cmd_crossover(const GlobalOptions& options, rfeh::CombinerKind technique_a,
                   rfeh::CombinerKind technique_b, std::size_t num_antennas,
                   double bracket_low_w, double bracket_high_w) {
  const RunConfig& config = options.config;
  config.validate();
  print_provenance(options);

  const rfeh::ExperimentSpec spec = make_spec(config, num_antennas);
  rfeh::CrossoverQuery query;
  query.technique_a = technique_a;
  query.technique_b = technique_b;
  query.bracket_low_w = bracket_low_w;
  query.bracket_high_w = bracket_high_w;
  query.mode = options.mode;
  const rfeh::RootResult root = rfeh::find_crossover(query, spec, options.threads);

  std::printf("crossover %s/%s K=%zu mode=%s: P_t_root = %#.6g W (residual %#.6g W)\n",
              rfeh::to_string(technique_a), rfeh::to_string(technique_b), num_antennas,
              rfeh::to_string(options.mode), root.transmit_power_w, root.residual_w);
  std::fflush(stdout);

  OutputStream out(options.out_path);
  write_root_header(out.get());
  write_root_row(out.get(), "crossover", rfeh::to_string(technique_a),
                 rfeh::to_string(technique_b), num_antennas, options.mode, root);
  out.finish();
}

void cmd_optimize(const GlobalOptions& options, const OptimizeArgs& args) {
  const RunConfig& config = options.config;
  config.validate();
  print_provenance(options);

  rfeh::ChannelRealization channel;
  if (!args.channel.empty()) {
    channel.coefficients = args.channel;
  } else {
    rfeh::ChannelConfig channel_config;
    channel_config.num_antennas =
        args.num_antennas != 0 ? args.num_antennas : config.antennas.front();
    channel_config.path_loss = config.path_loss;
    channel = rfeh::sample_channel(channel_config, config.seed, args.trial_index);
  }

  rfeh::P2Problem problem;
  problem.channel = channel;
  problem.eta = args.efficiency > 0.0 ? args.efficiency : config.efficiency;
  problem.transmit_power_w = args.transmit_power_w;
  problem.beta_w = args.beta_w;
  problem.fixed_consumption_w = args.fixed_consumption_w;
  problem.budget = args.budget;

  const rfeh::P2Solution solution = rfeh::solve_p2(problem);

  // Closed form: scale matched weights onto the budget sphere when the
  // harvested slope beats the weight cost, otherwise shut the combiner down.
  double channel_power = 0.0;
  for (const auto& h : channel.coefficients) channel_power += std::norm(h);
  const double margin = problem.eta * problem.transmit_power_w * channel_power - problem.beta_w;
  const double closed_objective =
      problem.budget * std::max(margin, 0.0) - problem.fixed_consumption_w;
  rfeh::WeightVector closed = rfeh::weights_mrc(channel);
  closed.budget = problem.budget;
  const double closed_scale = margin > 0.0 ? std::sqrt(problem.budget) : 0.0;
  for (auto& w : closed.weights) w *= closed_scale;

  const double gap = std::abs(solution.objective_w - closed_objective);
  double weight_gap = 0.0;
  for (std::size_t k = 0; k < channel.size(); ++k) {
    weight_gap = std::max(weight_gap,
                          std::abs(std::abs(solution.weights.weights[k]) -
                                   std::abs(closed.weights[k])));
  }

  OutputStream out(options.out_path);
  std::ostream& os = out.get();
  os << "channel (K=" << channel.size() << "): " << format_weights(channel.coefficients) << '\n';
  os << "eta = " << format_double(problem.eta) << ", P_t = " << format_double(problem.transmit_power_w)
     << " W, beta = " << format_double(problem.beta_w) << " W, P_d = "
     << format_double(problem.fixed_consumption_w) << " W, budget = "
     << format_double(problem.budget) << '\n';
  os << "solver objective = " << format_double(solution.objective_w) << " W, converged = "
     << (solution.converged ? "yes" : "no") << ", iterations = " << solution.iterations
     << ", grad_norm = " << format_double(solution.projected_gradient_norm) << '\n';
  os << "closed-form objective = " << format_double(closed_objective) << " W\n";
  os << "objective gap = " << format_double(gap) << " W\n";
  os << "max weight magnitude gap = " << format_double(weight_gap) << '\n';
  os << "solver weights: " << format_weights(solution.weights.weights) << '\n';
  os << "closed-form weights: " << format_weights(closed.weights) << '\n';
  out.finish();
}

}  // namespace rfehsim
