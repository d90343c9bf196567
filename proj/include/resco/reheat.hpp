#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "resco/annealing.hpp"

namespace resco {

/// sigma^2(window) / T^2 with the population variance (divide by M). Throws
/// State when the window holds fewer than two values.
double specific_heat(std::span<const double> window, double temperature);

/// Counts consecutive steps with |f_t - f_{t-1}| < epsilon. Fires once the
/// run reaches n_threshold, i.e. exactly when the last N differences are all
/// below epsilon.
class WanderingDetector {
 public:
  WanderingDetector(double epsilon, std::size_t n_threshold);

  bool update(double f_prev, double f_curr);
  void reset() noexcept { count_ = 0; }
  std::size_t consecutive_count() const noexcept { return count_; }
  double epsilon() const noexcept { return epsilon_; }
  std::size_t n_threshold() const noexcept { return n_threshold_; }

 private:
  double epsilon_;
  std::size_t n_threshold_;
  std::size_t count_ = 0;
};

/// Online arg-max of the windowed specific heat over steps t >= t_skip.
/// Later steps win ties. t_star starts at t_skip and c_star at 0.
class SpecificHeatTracker {
 public:
  SpecificHeatTracker(std::size_t m, std::size_t t_skip);

  /// Throws Contract unless steps arrive strictly increasing.
  void update(std::size_t t, double energy, double temperature);
  void freeze() noexcept { frozen_ = true; }

  bool frozen() const noexcept { return frozen_; }
  double c_star() const noexcept { return c_star_; }
  std::size_t t_star() const noexcept { return t_star_; }
  std::size_t sample_size() const noexcept { return m_; }
  std::size_t t_skip() const noexcept { return t_skip_; }
  /// Most recent value computed by update(), if any.
  std::optional<double> last_value() const noexcept { return last_; }

 private:
  std::size_t m_;
  std::size_t t_skip_;
  std::vector<double> ring_;
  std::vector<double> scratch_;
  std::size_t head_ = 0;
  std::size_t filled_ = 0;
  std::size_t last_t_ = 0;
  double c_star_ = 0.0;
  std::size_t t_star_;
  bool frozen_ = false;
  std::optional<double> last_;
};

struct ReheatConfig {
  double epsilon = 0.01;
  std::size_t n_threshold = 100;
  std::size_t m = 100;
  std::size_t t_skip = 200;
  bool freeze_after_first_reheat = true;

  /// Throws Config unless M >= 2, N >= 1, epsilon >= 0, M <= t_skip < L.
  void validate(std::size_t length) const;
};

/// Annealing with reheat. The schedule index t_temp starts at 1; step t
/// samples at T(t_temp). When wandering is detected t_temp is reset to the
/// tracker's t_star (or, if the sampler config carries a stepsize override,
/// the DMALA stepsize is switched instead), and t_temp is incremented after
/// every step. Exactly L sampler calls are made.
ChainTrace run_resco(const EnergyModel& model, const SamplerConfig& sampler,
                     const Schedule& schedule, const ReheatConfig& reheat, std::uint64_t seed,
                     const RunOptions& options = {});

}  // namespace resco
