#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diversity-combining RF energy harvesting simulator"};
  app.name("rfehsim");
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out_path;
  std::string mode_name = "analytic";
  std::uint64_t seed_override = 0;
  std::uint64_t trials_override = 0;
  unsigned threads = 0;
  bool dump = false;

  app.add_option("--config", config_path, "experiment configuration file");
  auto* seed_opt = app.add_option("--seed", seed_override, "override the random seed");
  auto* trials_opt =
      app.add_option("--trials", trials_override, "override the Monte Carlo trial count");
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--mode", mode_name, "root-finding estimator: analytic | mc")
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = hardware concurrency)");
  app.add_flag("--dump-config", dump, "print the effective configuration and exit");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "Monte Carlo mean harvested/net power vs transmit power");
  sweep_cmd->fallthrough();
  auto* analytic_cmd = app.add_subcommand("analytic", "closed-form mean power curves");
  analytic_cmd->fallthrough();

  std::string technique_name;
  std::string technique_a_name;
  std::string technique_b_name;
  std::size_t num_antennas = 0;
  std::vector<double> bracket;

  auto* boundary_cmd =
      app.add_subcommand("boundary", "transmit power where mean net power crosses zero");
  boundary_cmd->fallthrough();
  boundary_cmd->add_option("--technique", technique_name, "sc | egc | mrc")->required();
  boundary_cmd->add_option("--antennas", num_antennas, "antenna count K")->required();
  boundary_cmd->add_option("--bracket", bracket, "bracket: low high (watts)")
      ->expected(2)
      ->required();

  auto* crossover_cmd =
      app.add_subcommand("crossover", "transmit power where two techniques' mean net powers meet");
  crossover_cmd->fallthrough();
  crossover_cmd->add_option("--technique-a", technique_a_name, "sc | egc | mrc")->required();
  crossover_cmd->add_option("--technique-b", technique_b_name, "sc | egc | mrc")->required();
  crossover_cmd->add_option("--antennas", num_antennas, "antenna count K")->required();
  crossover_cmd->add_option("--bracket", bracket, "bracket: low high (watts)")
      ->expected(2)
      ->required();

  auto* optimize_cmd =
      app.add_subcommand("optimize", "solve the constrained weight problem on one channel");
  optimize_cmd->fallthrough();
  std::string channel_text;
  rfehsim::OptimizeArgs optimize_args;
  optimize_cmd->add_option("--channel", channel_text,
                           "explicit coefficients, e.g. \"3,4j,1-2j\" (default: sample one)");
  optimize_cmd->add_option("--antennas", optimize_args.num_antennas,
                           "antenna count when sampling (default: config's first)");
  optimize_cmd->add_option("--trial", optimize_args.trial_index,
                           "trial index of the sampled channel");
  optimize_cmd->add_option("--eta", optimize_args.efficiency,
                           "conversion efficiency (default: config's eta)");
  optimize_cmd->add_option("--pt", optimize_args.transmit_power_w, "transmit power, watts")
      ->capture_default_str();
  optimize_cmd->add_option("--beta", optimize_args.beta_w, "weight-power cost, watts")
      ->capture_default_str();
  optimize_cmd->add_option("--pd", optimize_args.fixed_consumption_w, "fixed consumption, watts")
      ->capture_default_str();
  optimize_cmd->add_option("--budget", optimize_args.budget, "weight power budget xi")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the diagnostic
    return kExitUsage;
  }

  try {
    rfehsim::GlobalOptions options;
    if (!config_path.empty()) {
      options.config = rfehsim::parse_config_file(config_path);
    }
    if (seed_opt->count() > 0) options.config.seed = seed_override;
    if (trials_opt->count() > 0) options.config.trials = trials_override;
    options.out_path = out_path;
    options.mode = rfehsim::mode_from_string(mode_name);
    options.threads = threads;

    if (dump) {
      options.config.validate();
      std::fputs(rfehsim::dump_config(options.config).c_str(), stdout);
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      rfehsim::cmd_sweep(options);
    } else if (analytic_cmd->parsed()) {
      rfehsim::cmd_analytic(options);
    } else if (boundary_cmd->parsed()) {
      rfehsim::cmd_boundary(options, rfehsim::technique_from_string(technique_name), num_antennas,
                            bracket[0], bracket[1]);
    } else if (crossover_cmd->parsed()) {
      rfehsim::cmd_crossover(options, rfehsim::technique_from_string(technique_a_name),
                             rfehsim::technique_from_string(technique_b_name), num_antennas,
                             bracket[0], bracket[1]);
    } else if (optimize_cmd->parsed()) {
      if (!channel_text.empty()) {
        optimize_args.channel = rfehsim::parse_complex_list(channel_text);
      }
      rfehsim::cmd_optimize(options, optimize_args);
    } else {
      std::fprintf(stderr,
                   "rfehsim: error: a command is required "
                   "(sweep, analytic, boundary, crossover, optimize)\n");
      return kExitUsage;
    }
    return kExitOk;
  } catch (const rfehsim::ConfigError& e) {
    std::fprintf(stderr, "rfehsim: error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "rfehsim: error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "rfehsim: error: %s\n", e.what());
    return kExitUsage;
  } catch (const rfehsim::IoError& e) {
    std::fprintf(stderr, "rfehsim: i/o error: %s\n", e.what());
    return kExitInternal;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rfehsim: internal error: %s\n", e.what());
    return kExitInternal;
  }
}
