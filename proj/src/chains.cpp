#include "resco/chains.hpp"

#include <chrono>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "resco/error.hpp"
#include "resco/rng.hpp"

namespace resco {

void ChainSetup::validate() const {
  require(chains >= 1, ErrorKind::Config, "at least one chain is required");
  sampler.validate();
  if (reheat) reheat->validate(schedule.length());
}

ChainResult run_chain(const EnergyModel& model, const ChainSetup& setup, std::size_t index) {
  ChainResult result;
  result.index = index;
  result.seed = derive_seed(setup.master_seed, index);
  const auto start = std::chrono::steady_clock::now();
  result.trace = setup.reheat ? run_resco(model, setup.sampler, setup.schedule, *setup.reheat,
                                          result.seed, setup.options)
                              : run_sa(model, setup.sampler, setup.schedule, result.seed,
                                       setup.options);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::vector<ChainResult> run_chains_serial(const EnergyModel& model, const ChainSetup& setup) {
  setup.validate();
  require(model.is_binary(), ErrorKind::Unsupported, "annealing chains need a binary model");
  std::vector<ChainResult> out;
  out.reserve(setup.chains);
  for (std::size_t k = 0; k < setup.chains; ++k) out.push_back(run_chain(model, setup, k));
  return out;
}

std::vector<ChainResult> run_chains(const EnergyModel& model, const ChainSetup& setup,
                                    int workers) {
  // Everything that can throw is checked here; the parallel region must not.
  setup.validate();
  require(model.is_binary(), ErrorKind::Unsupported, "annealing chains need a binary model");
  std::vector<ChainResult> out(setup.chains);
  const auto n = static_cast<std::int64_t>(setup.chains);
#ifdef _OPENMP
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#else
  (void)workers;
#endif
  for (std::int64_t k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = run_chain(model, setup, static_cast<std::size_t>(k));
  }
  return out;
}

}  // namespace resco
