#include "rfeh/combining.hpp"

#include <cmath>
#include <stdexcept>

namespace rfeh {

namespace {

double total_power(const std::vector<std::complex<double>>& v) {
  double sum = 0.0;
  for (const auto& x : v) sum += std::norm(x);
  return sum;
}

std::complex<double> combined_signal(const std::vector<std::complex<double>>& w,
                                     const std::vector<std::complex<double>>& h) {
  std::complex<double> s{0.0, 0.0};
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * h[k];
  return s;
}

void project_onto_budget(std::vector<std::complex<double>>& w, double budget) {
  const double pw = total_power(w);
  if (pw > budget && pw > 0.0) {
    const double c = std::sqrt(budget / pw);
    for (auto& x : w) x *= c;
  }
}

void require_nonempty(const ChannelRealization& channel, const char* who) {
  if (channel.size() == 0) {
    throw std::invalid_argument(std::string(who) + ": channel has no antennas");
  }
}

}  // namespace

const char* to_string(CombinerKind kind) {
  switch (kind) {
    case CombinerKind::SC: return "sc";
    case CombinerKind::EGC: return "egc";
    case CombinerKind::MRC: return "mrc";
    case CombinerKind::NumericP2: return "p2";
  }
  return "unknown";
}

double WeightVector::weight_power() const { return total_power(weights); }

void WeightVector::validate() const {
  if (weights.empty()) {
    throw std::invalid_argument("WeightVector: no weights");
  }
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw std::invalid_argument("WeightVector: budget must be positive and finite");
  }
  if (weight_power() > budget + 1e-12) {
    throw std::invalid_argument("WeightVector: weight power exceeds budget");
  }
}

void P2Problem::validate() const {
  require_nonempty(channel, "P2Problem");
  if (!(eta > 0.0) || eta > 1.0) {
    throw std::invalid_argument("P2Problem: eta must be in (0, 1]");
  }
  if (!(transmit_power_w >= 0.0) || !std::isfinite(transmit_power_w)) {
    throw std::invalid_argument("P2Problem: transmit_power_w must be >= 0 and finite");
  }
  if (!(beta_w >= 0.0) || !std::isfinite(beta_w)) {
    throw std::invalid_argument("P2Problem: beta_w must be >= 0 and finite");
  }
  if (!(fixed_consumption_w >= 0.0) || !std::isfinite(fixed_consumption_w)) {
    throw std::invalid_argument("P2Problem: fixed_consumption_w must be >= 0 and finite");
  }
  if (!(budget > 0.0) || !std::isfinite(budget)) {
    throw std::invalid_argument("P2Problem: budget must be positive and finite");
  }
}

WeightVector weights_sc(const ChannelRealization& channel) {
  require_nonempty(channel, "weights_sc");
  std::size_t best = 0;
  double best_power = std::norm(channel.coefficients[0]);
  for (std::size_t k = 1; k < channel.size(); ++k) {
    const double p = std::norm(channel.coefficients[k]);
    if (p > best_power) {  // strict, so ties keep the lowest index
      best_power = p;
      best = k;
    }
  }
  WeightVector out;
  out.weights.assign(channel.size(), std::complex<double>(0.0, 0.0));
  out.weights[best] = std::complex<double>(1.0, 0.0);
  return out;
}

WeightVector weights_egc(const ChannelRealization& channel) {
  require_nonempty(channel, "weights_egc");
  const double gain = 1.0 / std::sqrt(static_cast<double>(channel.size()));
  WeightVector out;
  out.weights.resize(channel.size());
  for (std::size_t k = 0; k < channel.size(); ++k) {
    const double amplitude = std::abs(channel.coefficients[k]);
    if (amplitude == 0.0) {
      // undefined phase; fix it to zero
      out.weights[k] = std::complex<double>(gain, 0.0);
    } else {
      out.weights[k] = gain * std::conj(channel.coefficients[k]) / amplitude;
    }
  }
  return out;
}

WeightVector weights_mrc(const ChannelRealization& channel) {
  require_nonempty(channel, "weights_mrc");
  WeightVector out;
  const double channel_norm = std::sqrt(total_power(channel.coefficients));
  if (channel_norm == 0.0) {
    // degenerate channel: every feasible weight harvests nothing
    out.weights.assign(channel.size(), std::complex<double>(0.0, 0.0));
    return out;
  }
  out.weights.resize(channel.size());
  for (std::size_t k = 0; k < channel.size(); ++k) {
    out.weights[k] = std::conj(channel.coefficients[k]) / channel_norm;
  }
  return out;
}

double combined_signal_power(const ChannelRealization& channel,
                             const WeightVector& weights) {
  if (channel.size() != weights.weights.size()) {
    throw std::invalid_argument("combined_signal_power: channel/weight length mismatch");
  }
  return std::norm(combined_signal(weights.weights, channel.coefficients));
}

double p2_objective(const P2Problem& problem, const WeightVector& weights) {
  problem.validate();
  if (weights.weights.size() != problem.channel.size()) {
    throw std::invalid_argument("p2_objective: channel/weight length mismatch");
  }
  const double signal = std::norm(combined_signal(weights.weights, problem.channel.coefficients));
  return problem.eta * problem.transmit_power_w * signal -
         problem.beta_w * weights.weight_power() - problem.fixed_consumption_w;
}

P2Solution solve_p2(const P2Problem& problem,
                    double tolerance,
                    std::uint64_t max_iterations) {
  problem.validate();
  if (!(tolerance > 0.0)) {
    throw std::invalid_argument("solve_p2: tolerance must be positive");
  }

  const auto& h = problem.channel.coefficients;
  const std::size_t num_branches = h.size();
  const double eta_pt = problem.eta * problem.transmit_power_w;
  const double beta = problem.beta_w;
  const double xi = problem.budget;
  const double channel_power = total_power(h);

  P2Solution result;
  result.weights.budget = xi;

  if (channel_power == 0.0) {
    result.weights.weights.assign(num_branches, std::complex<double>(0.0, 0.0));
    result.objective_w = -problem.fixed_consumption_w;
    result.converged = true;
    return result;
  }

  auto objective = [&](const std::vector<std::complex<double>>& v) {
    return eta_pt * std::norm(combined_signal(v, h)) - beta * total_power(v) -
           problem.fixed_consumption_w;
  };

  // When the signal term outweighs the weight cost, scaling onto the budget
  // sphere is an exact radial improvement; apply it after every step. Only
  // commits when the evaluated objective strictly improves, so the tracked
  // objective value increases monotonically and the iteration cannot cycle.
  auto push_to_budget_if_profitable = [&](std::vector<std::complex<double>>& v,
                                          double& fv) {
    const double pw = total_power(v);
    if (pw <= 0.0 || pw >= xi) return;
    const double balance = eta_pt * std::norm(combined_signal(v, h)) - beta * pw;
    if (balance > 0.0) {
      const double c = std::sqrt(xi / pw);
      std::vector<std::complex<double>> scaled(v);
      for (auto& x : scaled) x *= c;
      const double f_scaled = eta_pt * std::norm(combined_signal(scaled, h)) -
                              beta * total_power(scaled) -
                              problem.fixed_consumption_w;
      if (f_scaled > fv) {
        v.swap(scaled);
        fv = f_scaled;
      }
    }
  };

  // Equal-gain start scaled to the budget: feasible, and aligned with the
  // optimum strongly enough (cos^2 >= 1/K) that ascent cannot stall at zero.
  std::vector<std::complex<double>> w = weights_egc(problem.channel).weights;
  if (xi != 1.0) {
    const double c = std::sqrt(xi);
    for (auto& x : w) x *= c;
  }
  double f = objective(w);
  push_to_budget_if_profitable(w, f);

  std::vector<std::complex<double>> grad(num_branches), trial(num_branches);
  // Fixed step at the inverse Lipschitz constant of the gradient,
  // 1 / (2 (eta P_t ||h||^2 + beta)): the projected update is monotone in
  // exact arithmetic and the misalignment with the optimal direction
  // contracts by a fixed factor per iteration, independent of the margin
  // between harvest slope and weight cost.
  const double step = 1.0 / (2.0 * (eta_pt * channel_power + beta) + 1e-300);
  double pg_norm = 0.0;
  bool converged = false;
  std::uint64_t iterations = 0;

  while (iterations < max_iterations) {
    ++iterations;

    // Gradient over the 2K real parameters in complex form:
    // g_k = 2 (eta P_t s conj(h_k) - beta w_k), s = sum w_k h_k.
    const std::complex<double> s = combined_signal(w, h);
    for (std::size_t k = 0; k < num_branches; ++k) {
      grad[k] = 2.0 * (eta_pt * s * std::conj(h[k]) - beta * w[k]);
    }

    // Projected gradient: on the budget sphere, drop the outward radial part.
    const double pw = total_power(w);
    double radial = 0.0;
    for (std::size_t k = 0; k < num_branches; ++k) {
      radial += grad[k].real() * w[k].real() + grad[k].imag() * w[k].imag();
    }
    double pg2 = 0.0;
    if (pw >= xi * (1.0 - 1e-12) && radial > 0.0) {
      const double scale = radial / pw;
      for (std::size_t k = 0; k < num_branches; ++k) {
        pg2 += std::norm(grad[k] - scale * w[k]);
      }
    } else {
      for (std::size_t k = 0; k < num_branches; ++k) pg2 += std::norm(grad[k]);
    }
    pg_norm = std::sqrt(pg2);
    if (pg_norm < tolerance) {
      converged = true;
      break;
    }

    // Take the fixed step and keep it only on strict improvement. The step
    // never overshoots (it is at most the inverse curvature bound), so a
    // failure to improve strictly means the objective is flat to floating
    // point resolution around the iterate: the optimum has been reached to
    // machine precision and iterating further would only walk the plateau.
    for (std::size_t k = 0; k < num_branches; ++k) {
      trial[k] = w[k] + step * grad[k];
    }
    project_onto_budget(trial, xi);
    const double f_trial = objective(trial);
    if (!(f_trial > f)) {
      converged = true;
      break;
    }
    w.swap(trial);
    f = f_trial;
    push_to_budget_if_profitable(w, f);
  }

  // The idle receiver is always feasible and is the exact optimum whenever
  // eta P_t ||h||^2 <= beta; keeping it as a candidate returns the shutdown
  // regime exactly instead of asymptotically.
  const double idle_objective = -problem.fixed_consumption_w;
  if (idle_objective >= f) {
    w.assign(num_branches, std::complex<double>(0.0, 0.0));
    f = idle_objective;
    pg_norm = 0.0;
    converged = true;
  }

  result.weights.weights = std::move(w);
  result.objective_w = f;
  result.converged = converged;
  result.iterations = iterations;
  result.projected_gradient_norm = pg_norm;
  return result;
}

}  // namespace rfeh
