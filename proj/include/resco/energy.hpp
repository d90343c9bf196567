#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "resco/graph.hpp"

namespace resco {

enum class ProblemKind { MIS, MaxClique, MaxCut, Toy1D, Toy2D };

const char* to_string(ProblemKind kind);
ProblemKind problem_from_name(const std::string& name);

/// Sampler state. For binary models every entry is 0 or 1; the 1-D toy uses a
/// single entry holding an integer in [0, kToy1DMax].
using State = std::vector<std::uint8_t>;

inline constexpr int kToy1DMax = 8;
inline constexpr double kDefaultMisLambda = 1.0001;
inline constexpr double kDefaultCliqueLambda = 1.0;

/// A problem instance: energy f(x) to minimise, the gradient of its polynomial
/// relaxation, and exact single-flip energy differences.
///
///   MIS        f(x) = -sum x_i + lambda * sum_{(i,j) in E} x_i x_j
///   MaxClique  same as MIS over the complement graph
///   MaxCut     f(x) = -sum_{(i,j) in E} (1 - (2x_i - 1)(2x_j - 1)) / 2
///   Toy2D      f(x1, x2) = -(x1 + x2)(x1 + x2 - 3/2)
///   Toy1D      f(x) = x^4/4 - 4x^3/3 + 15x^2/8 on {0, ..., 8}
///
/// Immutable; copies share the graph.
class EnergyModel {
 public:
  static EnergyModel mis(Graph g, double lambda = kDefaultMisLambda);
  static EnergyModel max_clique(Graph g, double lambda = kDefaultCliqueLambda);
  static EnergyModel max_cut(Graph g);
  static EnergyModel toy1d();
  static EnergyModel toy2d();
  /// Dispatch on kind; `lambda <= 0` selects the per-problem default. The
  /// graph is ignored for the toys.
  static EnergyModel make(ProblemKind kind, Graph g, double lambda = 0.0);

  ProblemKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return dim_; }
  double lambda() const noexcept { return lambda_; }
  bool is_binary() const noexcept { return kind_ != ProblemKind::Toy1D; }
  bool has_graph() const noexcept { return graph_ != nullptr; }
  /// Input graph. Precondition: has_graph().
  const Graph& graph() const { return *graph_; }
  /// Graph whose edges carry the energy terms: the complement for MaxClique,
  /// the input graph otherwise.
  const Graph& interaction_graph() const { return *interaction_; }

  double energy(std::span<const std::uint8_t> x) const;
  /// The relaxation f~ at an arbitrary real point.
  double relaxed_energy(std::span<const double> x) const;

  std::vector<double> gradient(std::span<const std::uint8_t> x) const;
  void gradient_into(std::span<const std::uint8_t> x, std::span<double> out) const;
  /// Analytic gradient of f~ at a real point.
  std::vector<double> relaxed_gradient(std::span<const double> x) const;

  /// Exact f(x with bit i flipped) - f(x). Binary models only.
  double flip_delta(std::span<const std::uint8_t> x, std::size_t i) const;
  void flip_deltas_into(std::span<const std::uint8_t> x, std::span<double> out) const;

  /// -selected + lambda * violations, the exact expression energy() uses for
  /// MIS and MaxClique. Shared with the enumeration oracle so both produce
  /// bit-identical values.
  double penalized(std::int64_t selected, std::int64_t violations) const {
    return -static_cast<double>(selected) + lambda_ * static_cast<double>(violations);
  }

 private:
  EnergyModel(ProblemKind kind, std::size_t dim, double lambda,
              std::shared_ptr<const Graph> graph,
              std::shared_ptr<const Graph> interaction);

  void check_dim(std::size_t size) const;

  ProblemKind kind_;
  std::size_t dim_;
  double lambda_;
  std::shared_ptr<const Graph> graph_;
  std::shared_ptr<const Graph> interaction_;
};

double energy(const EnergyModel& model, std::span<const std::uint8_t> x);
std::vector<double> gradient(const EnergyModel& model, std::span<const std::uint8_t> x);

/// Central differences of the relaxation: (f~(x + h e_i) - f~(x - h e_i)) / 2h.
std::vector<double> finite_difference_gradient(const EnergyModel& model,
                                               std::span<const double> x, double h);

/// Higher-is-better reported value, -f(x).
double objective(const EnergyModel& model, std::span<const std::uint8_t> x);

/// Greedy feasibility repair for MIS and MaxClique: while any constraint is
/// violated, clear the selected node with the most violations (lowest index on
/// ties).
State repair(const EnergyModel& model, std::span<const std::uint8_t> x);

/// Number of interaction-graph edges with both endpoints selected.
std::size_t count_violations(const EnergyModel& model, std::span<const std::uint8_t> x);

std::size_t hamming_distance(std::span<const std::uint8_t> a,
                             std::span<const std::uint8_t> b);

std::string state_to_string(std::span<const std::uint8_t> x);

}  // namespace resco
