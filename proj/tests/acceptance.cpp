// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Expected values are computed here from first principles (direct
// harmonic sums, the pi/4 co-phasing gain, linear slopes) rather than read
// back from the library, so a regression in the closed forms cannot hide.
//
// Usage: acceptance <rfehsim-binary> <config-file>
//        (or RFEHSIM_BIN / RFEHSIM_CONFIG in the environment)

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rfeh/channel.hpp"
#include "rfeh/combining.hpp"
#include "rfeh/power.hpp"
#include "rfeh/simulation.hpp"

namespace {

using complexd = std::complex<double>;

constexpr double kPathLoss = 1e-3;
constexpr std::uint64_t kTrials = 1000000;

std::string g_binary;
std::string g_config;

// ---------------------------------------------------------------------------
// Reporting

int g_failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", index, name,
              detail.empty() ? "" : " | ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void run_criterion(int index, const char* name,
                   const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  report(index, name, pass, detail);
}

// ---------------------------------------------------------------------------
// First-principles expectations

double harmonic_direct(std::size_t k) {
  double sum = 0.0;
  for (std::size_t i = k; i >= 1; --i) sum += 1.0 / static_cast<double>(i);
  return sum;
}

double oracle_mean_signal_power(rfeh::CombinerKind kind, std::size_t k) {
  const double kd = static_cast<double>(k);
  switch (kind) {
    case rfeh::CombinerKind::SC:
      return kPathLoss * harmonic_direct(k);
    case rfeh::CombinerKind::EGC:
      return kPathLoss * (1.0 + (kd - 1.0) * std::numbers::pi / 4.0);
    default:
      return kPathLoss * kd;
  }
}

rfeh::ConsumptionProfile reference_profile(rfeh::CombinerKind kind) {
  rfeh::ConsumptionProfile profile;
  profile.kind = kind;
  profile.per_branch_w = 0.5e-3;
  profile.summation_w = 1e-3;
  profile.beta_w = kind == rfeh::CombinerKind::MRC
                       ? 2e-3
                       : (kind == rfeh::CombinerKind::EGC ? 1e-3 : 0.0);
  return profile;
}

rfeh::ExperimentSpec reference_spec(std::size_t num_antennas,
                                    std::vector<double> grid) {
  rfeh::ExperimentSpec spec;
  spec.channel_config.num_antennas = num_antennas;
  spec.channel_config.path_loss = kPathLoss;
  spec.profiles = {reference_profile(rfeh::CombinerKind::SC),
                   reference_profile(rfeh::CombinerKind::EGC),
                   reference_profile(rfeh::CombinerKind::MRC)};
  spec.techniques = {rfeh::CombinerKind::SC, rfeh::CombinerKind::EGC,
                     rfeh::CombinerKind::MRC};
  spec.transmit_power_grid_w = std::move(grid);
  spec.trials = kTrials;
  spec.seed = 1;
  return spec;
}

std::vector<double> reference_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 30; ++i) grid.push_back(0.1 * i);
  return grid;
}

std::string format_detail(const char* fmt, ...) {
  char buffer[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buffer, sizeof buffer, fmt, args);
  va_end(args);
  return buffer;
}

// ---------------------------------------------------------------------------
// Criteria

// 1. Monte Carlo mean harvested power at 1e6 trials matches the closed-form
//    expectation within 1% relative, per technique and K in {1, 2, 4, 8}.
bool criterion_oracle_equivalence(std::string& detail) {
  bool pass = true;
  double worst = 0.0;
  for (std::size_t k : {1, 2, 4, 8}) {
    const rfeh::ExperimentSpec spec = reference_spec(k, {0.5, 1.0, 3.0});
    const rfeh::SweepResult result = rfeh::run_sweep(spec, 0);
    for (const rfeh::SweepPoint& point : result.points) {
      if (point.transmit_power_w == 0.0) continue;
      const double expected = point.transmit_power_w *
                              oracle_mean_signal_power(point.technique, k);
      const double rel = std::abs(point.mean_harvested_w - expected) / expected;
      worst = std::max(worst, rel);
      if (rel > 0.01) pass = false;
    }
  }
  detail = format_detail("worst relative error %.3e (limit 1e-2) at 1e6 trials",
                         worst);
  return pass;
}

// 2. Mean harvested power orders SC < EGC < MRC at every grid point for
//    K in {2, 8}; SC at K=8 beats MRC at K=2 at every P_t > 0, with the
//    harvested ratio H_8 / 2 ~= 1.359.
bool criterion_figure_ordering(std::string& detail) {
  const std::vector<double> grid = reference_grid();
  const rfeh::ExperimentSpec spec2 = reference_spec(2, grid);
  const rfeh::ExperimentSpec spec8 = reference_spec(8, grid);
  const rfeh::SweepResult sweep2 = rfeh::run_sweep(spec2, 0);
  const rfeh::SweepResult sweep8 = rfeh::run_sweep(spec8, 0);
  const std::size_t n = grid.size();

  bool ordering = true;
  for (const rfeh::SweepResult* sweep : {&sweep2, &sweep8}) {
    for (std::size_t g = 0; g < n; ++g) {
      const rfeh::SweepPoint& sc = sweep->points[0 * n + g];
      const rfeh::SweepPoint& egc = sweep->points[1 * n + g];
      const rfeh::SweepPoint& mrc = sweep->points[2 * n + g];
      if (sc.transmit_power_w == 0.0) continue;
      if (!(sc.mean_harvested_w < egc.mean_harvested_w &&
            egc.mean_harvested_w < mrc.mean_harvested_w)) {
        ordering = false;
      }
      if (!(sc.analytic_mean_harvested_w < egc.analytic_mean_harvested_w &&
            egc.analytic_mean_harvested_w < mrc.analytic_mean_harvested_w)) {
        ordering = false;
      }
    }
  }

  bool sc8_beats_mrc2 = true;
  double measured_ratio = 0.0;
  for (std::size_t g = 0; g < n; ++g) {
    const rfeh::SweepPoint& sc8 = sweep8.points[0 * n + g];
    const rfeh::SweepPoint& mrc2 = sweep2.points[2 * n + g];
    if (sc8.transmit_power_w == 0.0) continue;
    if (!(sc8.mean_harvested_w > mrc2.mean_harvested_w)) sc8_beats_mrc2 = false;
    measured_ratio = sc8.mean_harvested_w / mrc2.mean_harvested_w;
  }

  // Expected ratio from first principles: PL*H_8 over 2*PL.
  const double expected_ratio = harmonic_direct(8) / 2.0;
  const bool ratio_ok = std::abs(expected_ratio - 1.359) < 1e-3 &&
                        std::abs(measured_ratio - expected_ratio) <
                            0.01 * expected_ratio;

  detail = format_detail(
      "ordering %s; SC(K=8) > MRC(K=2) %s; harvested ratio %.4f (expected "
      "%.4f ~ 1.359)",
      ordering ? "holds" : "violated", sc8_beats_mrc2 ? "holds" : "violated",
      measured_ratio, expected_ratio);
  return ordering && sc8_beats_mrc2 && ratio_ok;
}

// 3. Analytic no-harvesting boundaries at K = 2: EGC 1.680 W and MRC 2.000 W,
//    each within 10% of the reported 1.6 W / 1.9 W figure readings.
bool criterion_boundaries(std::string& detail) {
  const rfeh::ExperimentSpec spec = reference_spec(2, {1.0});
  const rfeh::RootResult egc = rfeh::find_no_harvesting_boundary(
      rfeh::CombinerKind::EGC, spec, rfeh::EstimateMode::Analytic, 0.0, 3.0);
  const rfeh::RootResult mrc = rfeh::find_no_harvesting_boundary(
      rfeh::CombinerKind::MRC, spec, rfeh::EstimateMode::Analytic, 0.0, 3.0);

  const bool egc_value = std::abs(egc.transmit_power_w - 1.680) <= 5e-4;
  const bool mrc_value = std::abs(mrc.transmit_power_w - 2.000) <= 5e-4;
  const bool egc_within = std::abs(egc.transmit_power_w - 1.6) / 1.6 <= 0.10;
  const bool mrc_within = std::abs(mrc.transmit_power_w - 1.9) / 1.9 <= 0.10;
  const bool residuals =
      std::abs(egc.residual_w) < 1e-9 && std::abs(mrc.residual_w) < 1e-9;

  detail = format_detail(
      "EGC %.6f W (vs 1.6: %+.1f%%), MRC %.6f W (vs 1.9: %+.1f%%)",
      egc.transmit_power_w, 100.0 * (egc.transmit_power_w - 1.6) / 1.6,
      mrc.transmit_power_w, 100.0 * (mrc.transmit_power_w - 1.9) / 1.9);
  return egc_value && mrc_value && egc_within && mrc_within && residuals;
}

// 4. Analytic SC-vs-MRC crossover at K = 8 equals 1.2306 W within 1e-4 W and
//    lies within 5% of 1.2 W; the Monte Carlo estimator at 1e6 trials cannot
//    distinguish that root from zero at its own confidence resolution.
bool criterion_crossover(std::string& detail) {
  const rfeh::ExperimentSpec spec = reference_spec(8, {1.0});
  rfeh::CrossoverQuery query;
  query.technique_a = rfeh::CombinerKind::SC;
  query.technique_b = rfeh::CombinerKind::MRC;
  query.bracket_low_w = 0.5;
  query.bracket_high_w = 3.0;

  const rfeh::RootResult analytic = rfeh::find_crossover(query, spec, 0);
  const bool value_ok = std::abs(analytic.transmit_power_w - 1.2306) <= 1e-4;
  const bool within = std::abs(analytic.transmit_power_w - 1.2) / 1.2 <= 0.05;
  const bool residual_ok = std::abs(analytic.residual_w) < 1e-9;

  query.mode = rfeh::EstimateMode::MonteCarlo;
  const rfeh::RootResult sampled = rfeh::find_crossover(query, spec, 0);
  const rfeh::Estimate gap = rfeh::estimate_mean_net_difference(
      rfeh::CombinerKind::SC, rfeh::CombinerKind::MRC, spec,
      analytic.transmit_power_w, 0);
  const bool mc_brackets = std::abs(gap.value_w) <= gap.ci95_halfwidth_w;
  const bool mc_near = std::abs(sampled.transmit_power_w -
                                analytic.transmit_power_w) < 0.02;

  detail = format_detail(
      "analytic %.6f W (vs 1.2: %+.1f%%); MC root %.4f W, |gap(analytic "
      "root)| %.2e <= ci %.2e: %s",
      analytic.transmit_power_w,
      100.0 * (analytic.transmit_power_w - 1.2) / 1.2,
      sampled.transmit_power_w, std::abs(gap.value_w), gap.ci95_halfwidth_w,
      mc_brackets ? "yes" : "no");
  return value_ok && within && residual_ok && mc_brackets && mc_near;
}

// 5. Over 1000 random instances, the numeric optimizer matches the analytic
//    optimum max(eta P_t xi ||h||^2 - beta xi, 0) - P_d within 1e-6 relative
//    (plus a floating-point floor), and saturating-regime weight magnitudes
//    match sqrt(xi)|h_k|/||h|| within 1e-4.
bool criterion_optimizer(std::string& detail) {
  std::mt19937_64 engine(0x5eedULL);
  std::normal_distribution<double> normal(0.0, 0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> antenna_count(1, 16);
  std::uniform_real_distribution<double> eta_dist(0.05, 1.0);
  std::uniform_real_distribution<double> power_dist(0.05, 3.0);
  std::uniform_real_distribution<double> budget_dist(0.25, 4.0);
  std::uniform_real_distribution<double> fixed_dist(0.0, 5e-3);

  int objective_failures = 0;
  int weight_failures = 0;
  int saturating = 0;
  double worst_objective = 0.0;
  double worst_weight = 0.0;

  for (int i = 0; i < 1000; ++i) {
    rfeh::P2Problem problem;
    const std::size_t k = antenna_count(engine);
    problem.channel.coefficients.resize(k);
    for (auto& coeff : problem.channel.coefficients) {
      coeff = complexd(normal(engine), normal(engine));
    }
    problem.eta = eta_dist(engine);
    problem.transmit_power_w = power_dist(engine);
    problem.budget = budget_dist(engine);
    problem.fixed_consumption_w = fixed_dist(engine);

    double norm_sq = 0.0;
    for (const auto& coeff : problem.channel.coefficients) {
      norm_sq += std::norm(coeff);
    }
    const double slope = problem.eta * problem.transmit_power_w * norm_sq;
    const double u = unit(engine);
    double beta_factor;
    if (u < 0.4) {
      beta_factor = 0.95 * unit(engine);
    } else if (u < 0.8) {
      beta_factor = 1.05 + unit(engine);
    } else if (u < 0.9) {
      beta_factor = 1.0 - 1e-7;
    } else {
      beta_factor = 1.0 + 1e-7;
    }
    problem.beta_w = slope * beta_factor;

    const double margin = slope - problem.beta_w;
    const double analytic =
        problem.budget * std::max(margin, 0.0) - problem.fixed_consumption_w;

    const rfeh::P2Solution solution = rfeh::solve_p2(problem);

    const double scale = problem.budget * (slope + problem.beta_w) +
                         problem.fixed_consumption_w;
    const double tolerance = 1e-6 * std::max(std::abs(analytic), 1e-9) +
                             64.0 * 2.220446049250313e-16 * scale;
    const double objective_error = std::abs(solution.objective_w - analytic);
    worst_objective = std::max(
        worst_objective, objective_error / std::max(std::abs(analytic), 1e-9));
    if (objective_error > tolerance || !solution.converged) {
      ++objective_failures;
    }

    if (margin > 1e-9 * slope) {
      ++saturating;
      const double norm = std::sqrt(norm_sq);
      const double root_budget = std::sqrt(problem.budget);
      for (std::size_t b = 0; b < k; ++b) {
        const double expected =
            root_budget * std::abs(problem.channel.coefficients[b]) / norm;
        const double gap =
            std::abs(std::abs(solution.weights.weights[b]) - expected);
        worst_weight = std::max(worst_weight, gap);
        if (gap > 1e-4) ++weight_failures;
      }
    }
  }

  detail = format_detail(
      "1000 instances: %d objective misses (worst rel %.2e), %d weight misses "
      "(worst gap %.2e) over %d saturating",
      objective_failures, worst_objective, weight_failures, saturating);
  return objective_failures == 0 && weight_failures == 0 && saturating > 300;
}

// 6. For 1e4 random (h, feasible w) pairs the combined power never exceeds
//    (sum |w|^2)(sum |h|^2); matched weights achieve it to 1e-10 relative.
bool criterion_schwarz(std::string& detail) {
  std::mt19937_64 engine(0xcafeULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> antenna_count(1, 12);

  int bound_violations = 0;
  int equality_misses = 0;
  double worst_excess = 0.0;
  double worst_equality = 0.0;

  for (int i = 0; i < 10000; ++i) {
    const std::size_t k = antenna_count(engine);
    rfeh::ChannelRealization h;
    h.coefficients.resize(k);
    double norm_sq = 0.0;
    for (auto& coeff : h.coefficients) {
      coeff = complexd(normal(engine), normal(engine));
      norm_sq += std::norm(coeff);
    }

    rfeh::WeightVector w;
    w.weights.resize(k);
    double weight_power = 0.0;
    for (auto& weight : w.weights) {
      weight = complexd(normal(engine), normal(engine));
      weight_power += std::norm(weight);
    }
    const double target = 1e-3 + 0.999 * unit(engine);
    const double factor = std::sqrt(target / weight_power);
    for (auto& weight : w.weights) weight *= factor;

    const double combined = rfeh::combined_signal_power(h, w);
    const double bound = w.weight_power() * norm_sq;
    if (combined > bound * (1.0 + 1e-12)) ++bound_violations;
    if (bound > 0.0) {
      worst_excess = std::max(worst_excess, combined / bound - 1.0);
    }

    const double matched = rfeh::combined_signal_power(h, rfeh::weights_mrc(h));
    const double equality_gap = std::abs(matched - norm_sq) / norm_sq;
    worst_equality = std::max(worst_equality, equality_gap);
    if (equality_gap > 1e-10) ++equality_misses;
  }

  detail = format_detail(
      "10000 pairs: %d bound violations (max excess %.2e), %d MRC equality "
      "misses (worst %.2e rel)",
      bound_violations, worst_excess, equality_misses, worst_equality);
  return bound_violations == 0 && equality_misses == 0;
}

// 7. `sweep` with a fixed seed produces byte-identical CSV across repeated
//    runs and across serial/parallel execution of the installed binary.
bool criterion_determinism(std::string& detail) {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("rfehsim_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  auto run_sweep_to = [&](const std::string& name,
                          const std::string& extra) -> std::string {
    const fs::path csv = dir / name;
    const fs::path log = dir / (name + ".log");
    const std::string command = g_binary + " sweep --config " + g_config +
                                " --out " + csv.string() + extra + " 2>" +
                                log.string();
    const int status = std::system(command.c_str());
    if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      throw std::runtime_error("sweep run failed: " + command);
    }
    std::ifstream in(csv, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };

  const std::string first = run_sweep_to("run1.csv", "");
  const std::string second = run_sweep_to("run2.csv", "");
  const std::string serial = run_sweep_to("run_serial.csv", " --threads 1");
  const std::string parallel = run_sweep_to("run_parallel.csv", " --threads 4");

  const bool rerun_same = first == second;
  const bool serial_same = first == serial;
  const bool parallel_same = first == parallel;
  const std::size_t line_count =
      static_cast<std::size_t>(std::count(first.begin(), first.end(), '\n'));

  detail = format_detail(
      "%zu lines at 1e6 trials; rerun %s, serial %s, 4-thread %s",
      line_count, rerun_same ? "identical" : "DIFFERS",
      serial_same ? "identical" : "DIFFERS",
      parallel_same ? "identical" : "DIFFERS");
  return rerun_same && serial_same && parallel_same && line_count == 187 &&
         !first.empty();
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    if (argv[i][0] == '-') continue;
    if (g_binary.empty()) {
      g_binary = argv[i];
    } else if (g_config.empty()) {
      g_config = argv[i];
    }
  }
  if (g_binary.empty()) {
    if (const char* env = std::getenv("RFEHSIM_BIN")) g_binary = env;
  }
  if (g_config.empty()) {
    if (const char* env = std::getenv("RFEHSIM_CONFIG")) g_config = env;
  }
  if (g_binary.empty() || g_config.empty()) {
    std::fprintf(stderr, "usage: acceptance <rfehsim-binary> <config-file>\n");
    return 1;
  }

  run_criterion(1, "Monte Carlo matches closed-form means within 1%",
                criterion_oracle_equivalence);
  run_criterion(2, "harvested-power ordering and K=8 SC over K=2 MRC",
                criterion_figure_ordering);
  run_criterion(3, "no-harvesting boundaries at K=2 (EGC 1.680 W, MRC 2.000 W)",
                criterion_boundaries);
  run_criterion(4, "SC/MRC crossover at K=8 (1.2306 W, MC consistent)",
                criterion_crossover);
  run_criterion(5, "optimizer certificate on 1000 random instances",
                criterion_optimizer);
  run_criterion(6, "Schwarz bound with MRC equality on 1e4 pairs",
                criterion_schwarz);
  run_criterion(7, "byte-identical sweep CSV across runs and thread counts",
                criterion_determinism);

  if (g_failures != 0) {
    std::printf("%d of 7 criteria failed\n", g_failures);
    return 1;
  }
  std::printf("all 7 criteria passed\n");
  return 0;
}
