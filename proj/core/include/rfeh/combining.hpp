#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "rfeh/channel.hpp"

namespace rfeh {

enum class CombinerKind { SC, EGC, MRC, NumericP2 };

const char* to_string(CombinerKind kind);

/// K complex combiner weights under the energy-conservation budget
/// sum |w_k|^2 <= budget. Physical receivers use budget = 1.
struct WeightVector {
  std::vector<std::complex<double>> weights;
  double budget = 1.0;

  /// Total weight power P_w = sum_k |w_k|^2.
  double weight_power() const;

  /// Throws std::invalid_argument if empty, if the budget is not positive,
  /// or if the weight power exceeds the budget beyond a 1e-12 rounding slack.
  void validate() const;
};

/// Instance of the budget-constrained net-power maximization
///   max_w  eta * P_t * |sum_k w_k h_k|^2 - beta * sum_k |w_k|^2 - P_d
///   s.t.   sum_k |w_k|^2 <= budget
struct P2Problem {
  ChannelRealization channel;
  double eta = 1.0;
  double transmit_power_w = 1.0;
  double beta_w = 0.0;
  double fixed_consumption_w = 0.0;
  double budget = 1.0;

  void validate() const;
};

/// Solver outcome. `converged` false means the iteration budget ran out; the
/// best iterate found, its objective, and the remaining projected-gradient
/// norm are still reported so callers can judge the gap.
struct P2Solution {
  WeightVector weights;
  double objective_w = 0.0;
  bool converged = false;
  std::uint64_t iterations = 0;
  double projected_gradient_norm = 0.0;
};

/// Selection combining: unit weight on the branch with the largest |h_k|^2,
/// zero elsewhere. Ties (including the all-zero channel) pick the lowest
/// index, so the output is deterministic.
WeightVector weights_sc(const ChannelRealization& channel);

/// Equal gain combining: w_k = e^{-j theta_k} / sqrt(K). A zero-amplitude
/// branch has undefined phase; its weight phase is fixed to 0.
WeightVector weights_egc(const ChannelRealization& channel);

/// Maximal ratio combining: w_k = conj(h_k) / ||h||, which meets the Schwarz
/// bound |sum w_k h_k|^2 = sum |h_k|^2 with a real, non-negative combined
/// signal. A zero channel yields the all-zero weight vector.
WeightVector weights_mrc(const ChannelRealization& channel);

/// |sum_k w_k h_k|^2. Throws std::invalid_argument on length mismatch.
double combined_signal_power(const ChannelRealization& channel,
                             const WeightVector& weights);

/// Objective of `problem` at `weights`:
/// eta * P_t * |sum w_k h_k|^2 - beta * sum |w_k|^2 - P_d.
double p2_objective(const P2Problem& problem, const WeightVector& weights);

/// Numerically maximizes the budget-constrained net power by projected
/// gradient ascent on the 2K real weight parameters, projecting onto the
/// ball sum |w_k|^2 <= budget. Starts from equal-gain weights scaled to the
/// budget; stops when the projected-gradient norm drops below `tolerance`
/// or the fixed-step update can no longer improve the objective at floating
/// point resolution.
P2Solution solve_p2(const P2Problem& problem,
                    double tolerance = 1e-10,
                    std::uint64_t max_iterations = 100000);

}  // namespace rfeh
