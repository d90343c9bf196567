#pragma once

#include <cstddef>
#include <cstdint>

#include "resco/energy.hpp"

namespace resco {

inline constexpr std::size_t kMaxBruteForceDim = 25;

struct Optimum {
  State state;
  double energy = 0.0;
};

/// Exhaustive minimum of f. States are encoded with x_0 as the least
/// significant bit; among minimisers the smallest encoding wins. Toy1D scans
/// its integer domain. Throws Size when dim > 25.
///
/// OpenMP over blocks of the state space; inside a block the state walks a
/// Gray code with integer counters updated per flip.
Optimum brute_force_optimum(const EnergyModel& model);

/// Reference path: decodes every state and calls EnergyModel::energy.
Optimum brute_force_optimum_serial(const EnergyModel& model);

}  // namespace resco
