#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "resco/annealing.hpp"
#include "resco/reheat.hpp"

namespace resco {

struct ChainSetup {
  SamplerConfig sampler;
  Schedule schedule{1.0, 1e-3, 1000};
  /// Absent: plain annealing.
  std::optional<ReheatConfig> reheat;
  RunOptions options;
  std::uint64_t master_seed = 0;
  std::size_t chains = 1;

  void validate() const;
};

struct ChainResult {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  ChainTrace trace;
  double wall_seconds = 0.0;
};

/// One chain, seeded with derive_seed(master_seed, index).
ChainResult run_chain(const EnergyModel& model, const ChainSetup& setup, std::size_t index);

/// All chains, spread over `workers` OpenMP threads (0 = runtime default).
/// Traces are identical to run_chains_serial.
std::vector<ChainResult> run_chains(const EnergyModel& model, const ChainSetup& setup,
                                    int workers = 0);

std::vector<ChainResult> run_chains_serial(const EnergyModel& model, const ChainSetup& setup);

}  // namespace resco
