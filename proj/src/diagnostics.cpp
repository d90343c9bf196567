#include "resco/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "resco/error.hpp"
#include "resco/reheat.hpp"

namespace resco {

std::optional<std::size_t> find_stop_point(const ChainTrace& trace, double epsilon,
                                           std::size_t n) {
  WanderingDetector detector(epsilon, n);
  for (std::size_t t = 1; t <= trace.energies.size(); ++t) {
    if (detector.update(trace.energy_at(t - 1), trace.energy_at(t))) return t;
  }
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> hamming_curve(const StateTrace& trace,
                                                               const State& reference) {
  require(trace.states.size() == trace.step_indices.size(), ErrorKind::Contract,
          "state trace is misaligned");
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(trace.states.size());
  for (std::size_t k = 0; k < trace.states.size(); ++k) {
    out.emplace_back(trace.step_indices[k], hamming_distance(trace.states[k], reference));
  }
  return out;
}

std::vector<std::pair<std::size_t, double>> specific_heat_curve(const ChainTrace& trace,
                                                                std::size_t m) {
  require(m >= 2, ErrorKind::Parameter, "sample size must be at least 2");
  std::vector<std::pair<std::size_t, double>> out;
  const auto& e = trace.energies;
  if (e.size() < m) return out;
  out.reserve(e.size() - m + 1);
  for (std::size_t t = m; t <= e.size(); ++t) {
    std::span<const double> window(e.data() + (t - m), m);
    out.emplace_back(t, specific_heat(window, trace.temperatures[t - 1]));
  }
  return out;
}

namespace {

void check_escape_args(std::size_t trials) {
  require(trials >= 1, ErrorKind::Parameter, "escaping rate needs at least one trial");
}

bool run_escape_trial(const EnergyModel& toy, const SamplerConfig& sampler, double temperature,
                      std::size_t steps, std::uint64_t seed) {
  Rng rng(seed);
  State x{0, 0};
  for (std::size_t s = 0; s < steps; ++s) {
    x = sample_step(toy, sampler, x, temperature, rng).state;
    if (x[0] == 1 && x[1] == 1) return true;
  }
  return false;
}

EscapeEstimate make_estimate(std::size_t successes, std::size_t trials) {
  EscapeEstimate est;
  est.successes = successes;
  est.trials = trials;
  est.rate = static_cast<double>(successes) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.rate * (1.0 - est.rate) / static_cast<double>(trials));
  return est;
}

}  // namespace

EscapeEstimate escaping_rate_serial(const SamplerConfig& sampler, double temperature,
                                    std::size_t trials, std::size_t steps,
                                    std::uint64_t seed) {
  check_escape_args(trials);
  sampler.validate();
  const auto toy = EnergyModel::toy2d();
  std::size_t successes = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    successes += run_escape_trial(toy, sampler, temperature, steps, derive_seed(seed, k));
  }
  return make_estimate(successes, trials);
}

EscapeEstimate escaping_rate(const SamplerConfig& sampler, double temperature,
                             std::size_t trials, std::size_t steps, std::uint64_t seed) {
  check_escape_args(trials);
  sampler.validate();
  require(temperature > 0.0, ErrorKind::Parameter, "temperature must be positive");
  const auto toy = EnergyModel::toy2d();
  const auto n = static_cast<std::int64_t>(trials);
  std::int64_t successes = 0;
#pragma omp parallel for schedule(static) reduction(+ : successes)
  for (std::int64_t k = 0; k < n; ++k) {
    successes += run_escape_trial(toy, sampler, temperature, steps,
                                  derive_seed(seed, static_cast<std::uint64_t>(k)));
  }
  return make_estimate(static_cast<std::size_t>(successes), trials);
}

double binomial_upper_tail(std::size_t n, std::size_t k) {
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  // Sum in log space; n is small (paired seeds) but keep it exact enough.
  const double log_half_n = static_cast<double>(n) * std::log(0.5);
  double total = 0.0;
  for (std::size_t j = k; j <= n; ++j) {
    const double log_choose = std::lgamma(double(n) + 1) - std::lgamma(double(j) + 1) -
                              std::lgamma(double(n - j) + 1);
    total += std::exp(log_choose + log_half_n);
  }
  return std::min(1.0, total);
}

SignTest sign_test(const std::vector<double>& treatment, const std::vector<double>& control,
                   double tie_tolerance) {
  require(treatment.size() == control.size(), ErrorKind::Contract,
          "paired samples must have equal length");
  SignTest st;
  for (std::size_t i = 0; i < treatment.size(); ++i) {
    const double diff = treatment[i] - control[i];
    if (std::abs(diff) <= tie_tolerance) {
      ++st.ties;
    } else if (diff > 0) {
      ++st.wins;
    } else {
      ++st.losses;
    }
  }
  const std::size_t n = st.wins + st.losses;
  st.p_greater = binomial_upper_tail(n, st.wins);
  const double p_less = binomial_upper_tail(n, st.losses);
  st.p_two_sided = std::min(1.0, 2.0 * std::min(st.p_greater, p_less));
  return st;
}

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) /
         static_cast<double>(values.size());
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return 0.5 * (lower + upper);
}

}  // namespace resco
