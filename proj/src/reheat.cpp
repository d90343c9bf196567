#include "resco/reheat.hpp"

#include <cmath>

#include "resco/error.hpp"

namespace resco {

double specific_heat(std::span<const double> window, double temperature) {
  require(window.size() >= 2, ErrorKind::State,
          "specific heat needs a window of at least two energies");
  require(temperature > 0.0, ErrorKind::Parameter, "temperature must be positive");
  const double m = static_cast<double>(window.size());
  double mean = 0.0;
  for (double e : window) mean += e;
  mean /= m;
  double var = 0.0;
  for (double e : window) var += (e - mean) * (e - mean);
  var /= m;
  return var / (temperature * temperature);
}

WanderingDetector::WanderingDetector(double epsilon, std::size_t n_threshold)
    : epsilon_(epsilon), n_threshold_(n_threshold) {
  require(epsilon >= 0.0, ErrorKind::Parameter, "epsilon must be non-negative");
  require(n_threshold >= 1, ErrorKind::Parameter, "wandering length must be at least 1");
}

bool WanderingDetector::update(double f_prev, double f_curr) {
  if (std::abs(f_curr - f_prev) < epsilon_) {
    ++count_;
  } else {
    count_ = 0;
  }
  return count_ >= n_threshold_;
}

SpecificHeatTracker::SpecificHeatTracker(std::size_t m, std::size_t t_skip)
    : m_(m), t_skip_(t_skip), ring_(m), scratch_(m), t_star_(t_skip) {
  require(m >= 2, ErrorKind::Parameter, "sample size M must be at least 2");
}

void SpecificHeatTracker::update(std::size_t t, double energy, double temperature) {
  require(t > last_t_, ErrorKind::Contract, "tracker steps must be strictly increasing");
  last_t_ = t;
  ring_[head_] = energy;
  head_ = (head_ + 1) % m_;
  if (filled_ < m_) ++filled_;
  if (frozen_ || t < t_skip_ || filled_ < m_) return;
  // Oldest first, so the arithmetic matches an offline pass over the trace.
  for (std::size_t k = 0; k < m_; ++k) scratch_[k] = ring_[(head_ + k) % m_];
  const double c = specific_heat(scratch_, temperature);
  last_ = c;
  if (c >= c_star_) {
    c_star_ = c;
    t_star_ = t;
  }
}

void ReheatConfig::validate(std::size_t length) const {
  require(m >= 2, ErrorKind::Config, "sample size M must be at least 2");
  require(n_threshold >= 1, ErrorKind::Config, "wandering length N must be at least 1");
  require(epsilon >= 0.0, ErrorKind::Config, "epsilon must be non-negative");
  require(t_skip >= m, ErrorKind::Config, "t_skip must be at least M");
  require(t_skip < length, ErrorKind::Config, "t_skip must be below the chain length L");
}

ChainTrace run_resco(const EnergyModel& model, const SamplerConfig& sampler,
                     const Schedule& schedule, const ReheatConfig& reheat, std::uint64_t seed,
                     const RunOptions& options) {
  sampler.validate();
  const std::size_t length = schedule.length();
  reheat.validate(length);

  Rng rng(seed);
  State x = initial_state(model, options.init, rng);
  WanderingDetector detector(reheat.epsilon, reheat.n_threshold);
  SpecificHeatTracker tracker(reheat.m, reheat.t_skip);
  double alpha = sampler.alpha;

  ChainTrace trace;
  trace.initial_energy = model.energy(x);
  trace.energies.reserve(length);
  trace.temperatures.reserve(length);
  if (options.state_stride > 0) {
    trace.states.step_indices.push_back(0);
    trace.states.states.push_back(x);
  }

  double previous = trace.initial_energy;
  std::size_t t_temp = 1;
  for (std::size_t t = 1; t <= length; ++t) {
    const double temperature = schedule.temperature_at(t_temp);
    StepOutcome out = sample_step(model, sampler, x, temperature, alpha, rng);
    ++trace.sampler_calls;
    x = std::move(out.state);
    trace.energies.push_back(out.energy);
    trace.temperatures.push_back(temperature);
    if (t == 1 || out.energy < trace.best_energy) {
      trace.best_energy = out.energy;
      trace.best_state = x;
      trace.best_step = t;
    }
    if (options.state_stride > 0 && t % options.state_stride == 0) {
      trace.states.step_indices.push_back(t);
      trace.states.states.push_back(x);
    }

    tracker.update(t, out.energy, temperature);
    if (detector.update(previous, out.energy)) {
      trace.detection_steps.push_back(t);
      detector.reset();
      if (sampler.stepsize_override) {
        alpha = *sampler.stepsize_override;
      } else {
        t_temp = tracker.t_star();
        trace.reheat_steps.push_back(t);
        trace.reheat_targets.push_back(t_temp);
        if (reheat.freeze_after_first_reheat) tracker.freeze();
      }
    }
    ++t_temp;
    previous = out.energy;
  }
  trace.steps = length;
  return trace;
}

}  // namespace resco
