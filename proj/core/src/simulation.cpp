#include "rfeh/simulation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace rfeh {

namespace {

// Trials are accumulated in fixed-size blocks. Each block's partial sums are
// produced by a serial in-order loop no matter which worker runs it, and the
// blocks are folded in index order afterwards, so any thread count yields the
// same doubles as a serial pass.
constexpr std::uint64_t kBlockSize = 8192;
constexpr double kZ95 = 1.959963984540054;
constexpr std::size_t kMaxTechniques = 3;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

struct TechSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

struct MomentsResult {
  std::array<TechSums, kMaxTechniques> tech{};
  TechSums diff{};  // per-trial x[0] - x[1], when requested
  std::uint64_t trials = 0;
};

// Weighted combined signal power per unit eta*P_t for each technique, from
// one channel realization: SC takes the strongest branch power, EGC the
// squared mean-amplitude gain, MRC the total branch power (Schwarz bound).
double technique_signal_power(CombinerKind kind, double sum_norm, double max_norm,
                              double sum_amp, double num_antennas) {
  switch (kind) {
    case CombinerKind::SC: return max_norm;
    case CombinerKind::EGC: return sum_amp * sum_amp / num_antennas;
    case CombinerKind::MRC: return sum_norm;
    default: break;
  }
  throw std::invalid_argument("technique_signal_power: technique has no closed-form weights");
}

// One full Monte Carlo pass: per-technique first and second moments of the
// combined signal power, plus the pairwise-difference moments when two
// techniques are being compared on common random numbers.
MomentsResult collect_moments(const ExperimentSpec& spec,
                              const std::vector<CombinerKind>& techniques,
                              bool want_diff, unsigned threads) {
  const std::size_t num_techniques = techniques.size();
  if (num_techniques == 0 || num_techniques > kMaxTechniques) {
    throw std::invalid_argument("collect_moments: need between 1 and 3 techniques");
  }
  if (want_diff && num_techniques != 2) {
    throw std::invalid_argument("collect_moments: difference needs exactly 2 techniques");
  }

  const std::uint64_t trials = spec.trials;
  const std::uint64_t num_blocks = (trials + kBlockSize - 1) / kBlockSize;
  const double num_antennas = static_cast<double>(spec.channel_config.num_antennas);

  struct Block {
    std::array<TechSums, kMaxTechniques> tech{};
    TechSums diff{};
  };
  std::vector<Block> blocks(num_blocks);

  auto run_block = [&](std::uint64_t block_index, ChannelRealization& scratch) {
    Block acc;
    const std::uint64_t begin = block_index * kBlockSize;
    const std::uint64_t end = std::min(trials, begin + kBlockSize);
    std::array<double, kMaxTechniques> x{};
    for (std::uint64_t trial = begin; trial < end; ++trial) {
      sample_channel_into(spec.channel_config, spec.seed, trial, scratch);
      double sum_norm = 0.0;
      double max_norm = 0.0;
      double sum_amp = 0.0;
      for (const auto& c : scratch.coefficients) {
        const double nrm = std::norm(c);
        sum_norm += nrm;
        if (nrm > max_norm) max_norm = nrm;
        sum_amp += std::abs(c);
      }
      for (std::size_t i = 0; i < num_techniques; ++i) {
        const double v =
            technique_signal_power(techniques[i], sum_norm, max_norm, sum_amp, num_antennas);
        acc.tech[i].sum += v;
        acc.tech[i].sum_sq += v * v;
        x[i] = v;
      }
      if (want_diff) {
        const double d = x[0] - x[1];
        acc.diff.sum += d;
        acc.diff.sum_sq += d * d;
      }
    }
    blocks[block_index] = acc;
  };

  unsigned worker_count = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  worker_count = static_cast<unsigned>(
      std::min<std::uint64_t>(worker_count, num_blocks));

  if (worker_count <= 1) {
    ChannelRealization scratch;
    for (std::uint64_t b = 0; b < num_blocks; ++b) run_block(b, scratch);
  } else {
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      ChannelRealization scratch;
      for (;;) {
        const std::uint64_t b = next.fetch_add(1, std::memory_order_relaxed);
        if (b >= num_blocks) break;
        run_block(b, scratch);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (unsigned i = 0; i < worker_count; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  MomentsResult out;
  out.trials = trials;
  for (std::uint64_t b = 0; b < num_blocks; ++b) {
    for (std::size_t i = 0; i < num_techniques; ++i) {
      out.tech[i].sum += blocks[b].tech[i].sum;
      out.tech[i].sum_sq += blocks[b].tech[i].sum_sq;
    }
    out.diff.sum += blocks[b].diff.sum;
    out.diff.sum_sq += blocks[b].diff.sum_sq;
  }
  return out;
}

// Sample standard error of the mean from raw first/second moment sums.
double standard_error(const TechSums& sums, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double nd = static_cast<double>(n);
  const double mean = sums.sum / nd;
  const double variance = std::max(0.0, sums.sum_sq - nd * mean * mean) / (nd - 1.0);
  return std::sqrt(variance / nd);
}

// Per-trial weight power is exactly 1 for all three closed-form techniques,
// so the consumption a technique pays is the constant beta + P_d.
double constant_consumption_w(const ConsumptionProfile& profile, std::size_t num_antennas) {
  return profile.beta_w + fixed_consumption_w(profile, num_antennas);
}

void validate_bracket(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo >= 0.0) || !(lo < hi)) {
    throw std::invalid_argument("bracket must satisfy 0 <= low < high and be finite");
  }
}

// Bisection on an exact (noise-free) function, refined until the bracket
// cannot shrink in double precision; on an affine mean-net curve this leaves
// a residual at the fused scale of slope * ulp(root).
template <typename F>
RootResult bisect_exact(F&& f, double lo, double hi) {
  double f_lo = f(lo);
  double f_hi = f(hi);
  const int s_lo = sign_of(f_lo);
  const int s_hi = sign_of(f_hi);
  if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) {
    throw std::domain_error("no zero crossing in bracket");
  }
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return {mid, 0.0};
    if (sign_of(f_mid) == s_lo) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  if (std::abs(f_lo) <= std::abs(f_hi)) return {lo, f_lo};
  return {hi, f_hi};
}

// Bisection on a sampled mean: shrink while the midpoint's confidence
// interval still excludes zero; stop at the first statistically ambiguous
// midpoint or once the bracket is narrower than 1 mW.
template <typename F>
RootResult bisect_sampled(F&& f, double lo, double hi) {
  const Estimate e_lo = f(lo);
  const Estimate e_hi = f(hi);
  const int s_lo = sign_of(e_lo.value_w);
  const int s_hi = sign_of(e_hi.value_w);
  if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) {
    throw std::domain_error("no zero crossing in bracket");
  }
  while (hi - lo >= 1e-3) {
    const double mid = 0.5 * (lo + hi);
    const Estimate e = f(mid);
    if (std::abs(e.value_w) <= e.ci95_halfwidth_w) return {mid, e.value_w};
    if (sign_of(e.value_w) == s_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double mid = 0.5 * (lo + hi);
  return {mid, f(mid).value_w};
}

}  // namespace

const char* to_string(EstimateMode mode) {
  switch (mode) {
    case EstimateMode::Analytic: return "analytic";
    case EstimateMode::MonteCarlo: return "mc";
  }
  return "unknown";
}

void ExperimentSpec::validate() const {
  channel_config.validate();
  harvester.validate();
  if (techniques.empty()) {
    throw std::invalid_argument("ExperimentSpec: technique list is empty");
  }
  for (std::size_t i = 0; i < techniques.size(); ++i) {
    if (techniques[i] == CombinerKind::NumericP2) {
      throw std::invalid_argument("ExperimentSpec: sweep techniques must be sc, egc, or mrc");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (techniques[j] == techniques[i]) {
        throw std::invalid_argument("ExperimentSpec: duplicate technique");
      }
    }
    profile_for(techniques[i]).validate();
  }
  if (transmit_power_grid_w.empty()) {
    throw std::invalid_argument("ExperimentSpec: transmit power grid is empty");
  }
  double prev = -1.0;
  for (const double p : transmit_power_grid_w) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("ExperimentSpec: grid powers must be >= 0 and finite");
    }
    if (p <= prev) {
      throw std::invalid_argument("ExperimentSpec: grid must be strictly increasing");
    }
    prev = p;
  }
  if (trials == 0) {
    throw std::invalid_argument("ExperimentSpec: trials must be >= 1");
  }
}

const ConsumptionProfile& ExperimentSpec::profile_for(CombinerKind kind) const {
  for (const auto& profile : profiles) {
    if (profile.kind == kind) return profile;
  }
  throw std::invalid_argument(std::string("ExperimentSpec: no consumption profile for ") +
                              to_string(kind));
}

MeanPowers analytic_mean_powers(CombinerKind technique, const ChannelConfig& config,
                                double efficiency, double transmit_power_w,
                                const ConsumptionProfile& profile) {
  if (!(efficiency > 0.0) || efficiency > 1.0) {
    throw std::invalid_argument("analytic_mean_powers: efficiency must be in (0, 1]");
  }
  if (!(transmit_power_w >= 0.0) || !std::isfinite(transmit_power_w)) {
    throw std::invalid_argument("analytic_mean_powers: transmit power must be >= 0 and finite");
  }
  if (profile.kind != technique) {
    throw std::invalid_argument("analytic_mean_powers: profile is for a different technique");
  }
  profile.validate();
  const ChannelStatistics stats = mean_channel_statistics(config);

  double mean_signal_power = 0.0;
  switch (technique) {
    case CombinerKind::SC:
      mean_signal_power = stats.mean_max_power;
      break;
    case CombinerKind::EGC:
      mean_signal_power =
          stats.mean_amplitude_sum_sq / static_cast<double>(config.num_antennas);
      break;
    case CombinerKind::MRC:
      mean_signal_power = stats.mean_total_power;
      break;
    default:
      throw std::invalid_argument("analytic_mean_powers: technique has no closed-form mean");
  }

  MeanPowers out;
  out.mean_harvested_w = efficiency * transmit_power_w * mean_signal_power;
  out.mean_net_w = out.mean_harvested_w - profile.beta_w -
                   fixed_consumption_w(profile, config.num_antennas);
  return out;
}

SweepResult run_sweep(const ExperimentSpec& spec, unsigned threads) {
  spec.validate();
  const MomentsResult moments = collect_moments(spec, spec.techniques, false, threads);
  const double eta = spec.harvester.efficiency;
  const std::size_t num_antennas = spec.channel_config.num_antennas;
  const double nd = static_cast<double>(moments.trials);

  SweepResult result;
  result.num_antennas = num_antennas;
  result.seed = spec.seed;
  result.points.reserve(spec.techniques.size() * spec.transmit_power_grid_w.size());

  for (std::size_t i = 0; i < spec.techniques.size(); ++i) {
    const CombinerKind technique = spec.techniques[i];
    const ConsumptionProfile& profile = spec.profile_for(technique);
    const double mean_x = moments.tech[i].sum / nd;
    const double se_x = standard_error(moments.tech[i], moments.trials);
    const double weight_cost_w = profile.beta_w;  // beta * P_w with P_w = 1
    const double fixed_w = fixed_consumption_w(profile, num_antennas);

    for (const double transmit_power_w : spec.transmit_power_grid_w) {
      SweepPoint point;
      point.technique = technique;
      point.transmit_power_w = transmit_power_w;
      point.mean_harvested_w = eta * transmit_power_w * mean_x;
      point.mean_net_w = point.mean_harvested_w - weight_cost_w - fixed_w;
      point.ci95_halfwidth_w = kZ95 * eta * transmit_power_w * se_x;
      const MeanPowers analytic =
          analytic_mean_powers(technique, spec.channel_config, eta, transmit_power_w, profile);
      point.analytic_mean_harvested_w = analytic.mean_harvested_w;
      point.analytic_mean_net_w = analytic.mean_net_w;
      point.trials_used = moments.trials;
      result.points.push_back(point);
    }
  }
  return result;
}

Estimate estimate_mean_net(CombinerKind technique, const ExperimentSpec& spec,
                           double transmit_power_w, unsigned threads) {
  spec.validate();
  if (!(transmit_power_w >= 0.0) || !std::isfinite(transmit_power_w)) {
    throw std::invalid_argument("estimate_mean_net: transmit power must be >= 0 and finite");
  }
  const ConsumptionProfile& profile = spec.profile_for(technique);
  const std::vector<CombinerKind> requested{technique};
  const MomentsResult moments = collect_moments(spec, requested, false, threads);
  const double eta_pt = spec.harvester.efficiency * transmit_power_w;

  Estimate out;
  out.value_w = eta_pt * (moments.tech[0].sum / static_cast<double>(moments.trials)) -
                constant_consumption_w(profile, spec.channel_config.num_antennas);
  out.ci95_halfwidth_w = kZ95 * eta_pt * standard_error(moments.tech[0], moments.trials);
  out.trials_used = moments.trials;
  return out;
}

Estimate estimate_mean_net_difference(CombinerKind technique_a, CombinerKind technique_b,
                                      const ExperimentSpec& spec, double transmit_power_w,
                                      unsigned threads) {
  spec.validate();
  if (!(transmit_power_w >= 0.0) || !std::isfinite(transmit_power_w)) {
    throw std::invalid_argument(
        "estimate_mean_net_difference: transmit power must be >= 0 and finite");
  }
  const ConsumptionProfile& profile_a = spec.profile_for(technique_a);
  const ConsumptionProfile& profile_b = spec.profile_for(technique_b);
  const std::vector<CombinerKind> requested{technique_a, technique_b};
  const MomentsResult moments = collect_moments(spec, requested, true, threads);
  const double eta_pt = spec.harvester.efficiency * transmit_power_w;
  const std::size_t num_antennas = spec.channel_config.num_antennas;

  Estimate out;
  out.value_w = eta_pt * (moments.diff.sum / static_cast<double>(moments.trials)) -
                (constant_consumption_w(profile_a, num_antennas) -
                 constant_consumption_w(profile_b, num_antennas));
  out.ci95_halfwidth_w = kZ95 * eta_pt * standard_error(moments.diff, moments.trials);
  out.trials_used = moments.trials;
  return out;
}

RootResult find_no_harvesting_boundary(CombinerKind technique, const ExperimentSpec& spec,
                                       EstimateMode mode, double bracket_low_w,
                                       double bracket_high_w, unsigned threads) {
  spec.validate();
  validate_bracket(bracket_low_w, bracket_high_w);
  const ConsumptionProfile& profile = spec.profile_for(technique);

  if (mode == EstimateMode::Analytic) {
    auto mean_net = [&](double p) {
      return analytic_mean_powers(technique, spec.channel_config, spec.harvester.efficiency, p,
                                  profile)
          .mean_net_w;
    };
    return bisect_exact(mean_net, bracket_low_w, bracket_high_w);
  }

  const std::vector<CombinerKind> requested{technique};
  const MomentsResult moments = collect_moments(spec, requested, false, threads);
  const double consumption = constant_consumption_w(profile, spec.channel_config.num_antennas);
  const double mean_x = moments.tech[0].sum / static_cast<double>(moments.trials);
  const double se_x = standard_error(moments.tech[0], moments.trials);
  auto estimate = [&](double p) {
    const double eta_pt = spec.harvester.efficiency * p;
    Estimate e;
    e.value_w = eta_pt * mean_x - consumption;
    e.ci95_halfwidth_w = kZ95 * eta_pt * se_x;
    e.trials_used = moments.trials;
    return e;
  };
  return bisect_sampled(estimate, bracket_low_w, bracket_high_w);
}

void CrossoverQuery::validate() const {
  validate_bracket(bracket_low_w, bracket_high_w);
  if (technique_a == CombinerKind::NumericP2 || technique_b == CombinerKind::NumericP2) {
    throw std::invalid_argument("CrossoverQuery: techniques must be sc, egc, or mrc");
  }
}

RootResult find_crossover(const CrossoverQuery& query, const ExperimentSpec& spec,
                          unsigned threads) {
  spec.validate();
  query.validate();
  const ConsumptionProfile& profile_a = spec.profile_for(query.technique_a);
  const ConsumptionProfile& profile_b = spec.profile_for(query.technique_b);

  if (query.mode == EstimateMode::Analytic) {
    auto mean_net_gap = [&](double p) {
      const double a = analytic_mean_powers(query.technique_a, spec.channel_config,
                                            spec.harvester.efficiency, p, profile_a)
                           .mean_net_w;
      const double b = analytic_mean_powers(query.technique_b, spec.channel_config,
                                            spec.harvester.efficiency, p, profile_b)
                           .mean_net_w;
      return a - b;
    };
    return bisect_exact(mean_net_gap, query.bracket_low_w, query.bracket_high_w);
  }

  const std::vector<CombinerKind> requested{query.technique_a, query.technique_b};
  const MomentsResult moments = collect_moments(spec, requested, true, threads);
  const std::size_t num_antennas = spec.channel_config.num_antennas;
  const double consumption_gap = constant_consumption_w(profile_a, num_antennas) -
                                 constant_consumption_w(profile_b, num_antennas);
  const double mean_d = moments.diff.sum / static_cast<double>(moments.trials);
  const double se_d = standard_error(moments.diff, moments.trials);
  auto estimate = [&](double p) {
    const double eta_pt = spec.harvester.efficiency * p;
    Estimate e;
    e.value_w = eta_pt * mean_d - consumption_gap;
    e.ci95_halfwidth_w = kZ95 * eta_pt * se_d;
    e.trials_used = moments.trials;
    return e;
  };
  return bisect_sampled(estimate, query.bracket_low_w, query.bracket_high_w);
}

}  // namespace rfeh
