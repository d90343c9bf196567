#pragma once

#include <cstdint>
#include <vector>

#include "resco/energy.hpp"
#include "resco/samplers.hpp"

namespace resco {

/// Exponential cooling T(t) = t_init * (t_final / t_init)^(t / L), t in [0, L].
class Schedule {
 public:
  Schedule(double t_init, double t_final, std::size_t length);

  double t_init() const noexcept { return t_init_; }
  double t_final() const noexcept { return t_final_; }
  std::size_t length() const noexcept { return length_; }

  /// Throws Range for t > L. Endpoints are returned exactly.
  double temperature_at(std::size_t t) const;

 private:
  double t_init_;
  double t_final_;
  std::size_t length_;
  double log_ratio_;
};

inline double temperature_at(const Schedule& s, std::size_t t) { return s.temperature_at(t); }

/// Sampled states at a fixed stride; step 0 is the initial state.
struct StateTrace {
  std::vector<std::size_t> step_indices;
  std::vector<State> states;

  friend bool operator==(const StateTrace&, const StateTrace&) = default;
};

/// Per-step record of one chain. Steps are 1-based: energies[t - 1] is f(x_t)
/// and temperatures[t - 1] the temperature x_t was sampled at.
struct ChainTrace {
  double initial_energy = 0.0;
  std::vector<double> energies;
  std::vector<double> temperatures;
  /// Steps at which the schedule was reset to the critical temperature.
  std::vector<std::size_t> reheat_steps;
  /// Schedule index t_Temp was reset to at each reheat.
  std::vector<std::size_t> reheat_targets;
  /// Steps at which wandering was detected (reheat or stepsize override).
  std::vector<std::size_t> detection_steps;
  double best_energy = 0.0;
  State best_state;
  std::size_t best_step = 0;
  std::size_t steps = 0;
  std::size_t sampler_calls = 0;
  StateTrace states;

  double energy_at(std::size_t t) const {
    return t == 0 ? initial_energy : energies[t - 1];
  }

  friend bool operator==(const ChainTrace&, const ChainTrace&) = default;
};

enum class InitMode { Random, Zeros };

struct RunOptions {
  InitMode init = InitMode::Random;
  /// Record the state every `state_stride` steps; 0 disables snapshots.
  std::size_t state_stride = 0;
};

/// x_0: all zeros, or one bit per coordinate from the top bit of rng.next().
State initial_state(const EnergyModel& model, InitMode mode, Rng& rng);

/// Inhomogeneous annealing: one sampler step at each T(1), ..., T(L).
ChainTrace run_sa(const EnergyModel& model, const SamplerConfig& sampler,
                  const Schedule& schedule, std::uint64_t seed, const RunOptions& options = {});

}  // namespace resco
