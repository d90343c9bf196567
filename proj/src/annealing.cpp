#include "resco/annealing.hpp"

#include <cmath>

#include "resco/error.hpp"

namespace resco {

Schedule::Schedule(double t_init, double t_final, std::size_t length)
    : t_init_(t_init), t_final_(t_final), length_(length) {
  require(t_init > 0.0 && t_final > 0.0, ErrorKind::Parameter,
          "schedule temperatures must be positive");
  require(t_final <= t_init, ErrorKind::Parameter,
          "final temperature must not exceed the initial temperature");
  require(length >= 1, ErrorKind::Parameter, "schedule length must be at least 1");
  log_ratio_ = std::log(t_final / t_init);
}

double Schedule::temperature_at(std::size_t t) const {
  if (t > length_) {
    throw Error(ErrorKind::Range, "step " + std::to_string(t) + " outside schedule [0, " +
                                      std::to_string(length_) + "]");
  }
  if (t == 0) return t_init_;
  if (t == length_) return t_final_;
  const double frac = static_cast<double>(t) / static_cast<double>(length_);
  return t_init_ * std::exp(frac * log_ratio_);
}

State initial_state(const EnergyModel& model, InitMode mode, Rng& rng) {
  State x(model.dim(), 0);
  if (mode == InitMode::Random) {
    for (auto& v : x) v = static_cast<std::uint8_t>(rng.next() >> 63);
  }
  return x;
}

ChainTrace run_sa(const EnergyModel& model, const SamplerConfig& sampler,
                  const Schedule& schedule, std::uint64_t seed, const RunOptions& options) {
  sampler.validate();
  Rng rng(seed);
  State x = initial_state(model, options.init, rng);

  ChainTrace trace;
  const std::size_t length = schedule.length();
  trace.initial_energy = model.energy(x);
  trace.energies.reserve(length);
  trace.temperatures.reserve(length);
  if (options.state_stride > 0) {
    trace.states.step_indices.push_back(0);
    trace.states.states.push_back(x);
  }

  for (std::size_t t = 1; t <= length; ++t) {
    const double temperature = schedule.temperature_at(t);
    StepOutcome out = sample_step(model, sampler, x, temperature, rng);
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
  }
  trace.steps = length;
  return trace;
}

}  // namespace resco
