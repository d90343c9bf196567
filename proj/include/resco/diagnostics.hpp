#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "resco/annealing.hpp"
#include "resco/samplers.hpp"

namespace resco {

/// First step t at which |f(x_{t-i}) - f(x_{t-i-1})| < epsilon holds for
/// i = 0..n-1, using trace.initial_energy as f(x_0).
std::optional<std::size_t> find_stop_point(const ChainTrace& trace, double epsilon,
                                           std::size_t n);

/// (step, Hamming distance to reference) for every recorded state.
std::vector<std::pair<std::size_t, std::size_t>> hamming_curve(const StateTrace& trace,
                                                               const State& reference);

/// (t, C_hat(t)) for t = m..steps, each computed from energies t-m+1..t and the
/// temperature recorded at t.
std::vector<std::pair<std::size_t, double>> specific_heat_curve(const ChainTrace& trace,
                                                                std::size_t m);

struct EscapeEstimate {
  double rate = 0.0;
  std::size_t successes = 0;
  std::size_t trials = 0;
  /// Binomial standard error sqrt(rate (1 - rate) / trials).
  double std_error = 0.0;
};

/// Fraction of trials that, starting from (0, 0) on the 2-D toy and running
/// `steps` kernel steps at constant temperature, visit (1, 1) at least once.
/// Trial k uses Rng(derive_seed(seed, k)), so the result does not depend on
/// thread count. OpenMP over trials.
EscapeEstimate escaping_rate(const SamplerConfig& sampler, double temperature,
                             std::size_t trials, std::size_t steps, std::uint64_t seed);

/// Single-threaded reference for escaping_rate.
EscapeEstimate escaping_rate_serial(const SamplerConfig& sampler, double temperature,
                                    std::size_t trials, std::size_t steps,
                                    std::uint64_t seed);

/// Paired comparison summary. Ties are dropped before the sign test.
struct SignTest {
  std::size_t wins = 0;
  std::size_t losses = 0;
  std::size_t ties = 0;
  /// P(X >= wins) for X ~ Binomial(wins + losses, 1/2).
  double p_greater = 1.0;
  /// Two-sided, min(1, 2 * min tail).
  double p_two_sided = 1.0;
};

/// Sign test of treatment against control over paired samples.
SignTest sign_test(const std::vector<double>& treatment, const std::vector<double>& control,
                   double tie_tolerance = 1e-9);

/// P(X >= k), X ~ Binomial(n, 1/2).
double binomial_upper_tail(std::size_t n, std::size_t k);

double mean(const std::vector<double>& values);
double median(std::vector<double> values);

}  // namespace resco
