#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resco/energy.hpp"
#include "resco/rng.hpp"

namespace resco {

enum class SamplerKind { RandomWalk, DMALA, PathAux };
enum class Balancing { Sqrt, Ratio };
/// How PathAux scores candidate flips: exact single-flip energy differences, or
/// the first-order estimate -grad_i * (x_i' - x_i).
enum class FlipScore { Exact, Gradient };

const char* to_string(SamplerKind kind);
SamplerKind sampler_from_name(const std::string& name);
const char* to_string(Balancing g);
Balancing balancing_from_name(const std::string& name);
const char* to_string(FlipScore s);
FlipScore flip_score_from_name(const std::string& name);

struct SamplerConfig {
  SamplerKind kind = SamplerKind::PathAux;
  double alpha = 0.2;
  int path_length = 3;
  Balancing balancing = Balancing::Sqrt;
  FlipScore flip_score = FlipScore::Exact;
  /// DMALA stepsize swapped in when wandering is detected (stepsize ablation).
  std::optional<double> stepsize_override;

  void validate() const;
};

struct StepOutcome {
  State state;
  double energy = 0.0;
  bool accepted = false;
  std::size_t proposal_distance = 0;
};

/// u < min(1, exp(-delta_f / T)).
bool metropolis_accept(double delta_f, double temperature, double u);
/// min(1, exp(-delta_f / T)).
double acceptance_probability(double delta_f, double temperature);

/// log g(exp(a)) for the balancing functions sqrt(t) and t / (1 + t).
double log_balance(Balancing g, double log_ratio);

/// Single-site Metropolis: flip a uniform coordinate, accept by Metropolis.
StepOutcome random_walk_step(const EnergyModel& model, const State& x, double temperature,
                             Rng& rng);

/// Probability that DMALA proposes flipping coordinate i, given the gradient
/// component at the current state: sigmoid of the flip score
///   -grad_i * (1 - 2 x_i) / (2T) - 1 / (2 alpha).
/// Returned in log space as (log p_flip, log p_stay).
std::pair<double, double> dmala_log_flip(double grad_i, std::uint8_t x_i, double temperature,
                                         double alpha);

/// Factorised gradient proposal over all coordinates followed by a joint
/// Metropolis-Hastings correction.
StepOutcome dmala_step(const EnergyModel& model, const State& x, double temperature,
                       double alpha, Rng& rng);

/// Log-probabilities of choosing each coordinate for the next PathAux flip at
/// state x (normalised with log-sum-exp).
std::vector<double> pas_log_flip_probs(const EnergyModel& model, const State& x,
                                       double temperature, Balancing g, FlipScore score);

/// Path-auxiliary sampler: `path_length` sequential locally balanced flips,
/// accepted jointly with the reverse-path probability.
StepOutcome pas_step(const EnergyModel& model, const State& x, double temperature,
                     int path_length, Balancing g, Rng& rng,
                     FlipScore score = FlipScore::Exact);

/// Dispatch on config.kind, running DMALA at `alpha`.
StepOutcome sample_step(const EnergyModel& model, const SamplerConfig& config,
                        const State& x, double temperature, double alpha, Rng& rng);
inline StepOutcome sample_step(const EnergyModel& model, const SamplerConfig& config,
                               const State& x, double temperature, Rng& rng) {
  return sample_step(model, config, x, temperature, config.alpha, rng);
}

double log_sum_exp(std::span<const double> values);

}  // namespace resco
