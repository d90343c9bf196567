#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "resco/chains.hpp"
#include "resco/diagnostics.hpp"
#include "resco/energy.hpp"
#include "resco/oracle.hpp"

namespace resco {

/// Where the instance graph comes from: a file, or a generator.
struct GraphSource {
  std::string path;             ///< "-" reads standard input
  std::string format = "auto";  ///< auto | edgelist | dimacs
  std::string generator;        ///< er | ba; used when path is empty
  std::size_t n = 0;
  double p = 0.0;
  std::size_t m = 1;
  std::uint64_t seed = 0;
};

/// One experiment, serialised as JSON. Absent `reheat` means plain annealing.
struct ExperimentConfig {
  ProblemKind problem = ProblemKind::MIS;
  GraphSource graph;
  std::optional<double> lambda;
  SamplerConfig sampler;
  double t_init = 1.0;
  double t_final = 1e-3;
  std::size_t length = 20000;
  std::optional<ReheatConfig> reheat = ReheatConfig{};
  InitMode init = InitMode::Random;
  std::size_t chains = 1;
  std::uint64_t master_seed = 0;
  std::size_t state_stride = 10;
  int workers = 0;
  std::string output_dir = "resco-out";
  /// Known optimum objective, enables the Drop field.
  std::optional<double> reference;

  void validate() const;
  ChainSetup chain_setup() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Graph-backed problems load or generate the graph; the toys need none.
EnergyModel build_model(const ExperimentConfig& config);

struct ChainSummary {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double best_objective = 0.0;
  std::string best_state;
  std::size_t best_step = 0;
  std::optional<double> repaired_objective;
  std::size_t reheats = 0;
  std::size_t detections = 0;
  double wall_seconds = 0.0;
  std::string trace_path;
  std::string states_path;
};

struct RunResult {
  std::vector<ChainSummary> chains;
  double aggregate_best = 0.0;
  double mean_best = 0.0;
  std::string best_state;
  std::optional<double> repaired_best;
  std::optional<double> reference;
  /// (reference - aggregate_best) / reference.
  std::optional<double> drop;

  /// Summary with wall-clock values confined to the "timing" member.
  nlohmann::json to_json() const;
};

/// Runs every chain and, when `write_outputs`, writes into config.output_dir:
///   config.json            the effective configuration
///   summary.json           RunResult
///   traces/chain_KKK.csv   step,energy,temperature,best_energy,reheat_flag
///   states/chain_KKK.csv   step,state (when state_stride > 0)
RunResult cmd_solve(const ExperimentConfig& config, bool write_outputs = true);

/// Same, on a model already built (bench, ablation).
RunResult solve_model(const EnergyModel& model, const ExperimentConfig& config,
                      bool write_outputs);

void write_trace_csv(const ChainTrace& trace, const std::filesystem::path& path);
void write_states_csv(const StateTrace& states, const std::filesystem::path& path);

struct BenchRow {
  std::string instance;
  bool ok = false;
  std::string error;
  std::size_t nodes = 0;
  double objective = 0.0;
  std::optional<double> repaired;
  std::optional<double> reference;
  std::optional<double> ratio;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::size_t failures = 0;
  std::optional<double> mean_ratio;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
  std::string to_table() const;
};

/// "instance,reference" per line; '#' comments; instance is a file name or
/// its stem.
std::vector<std::pair<std::string, double>> load_references(const std::filesystem::path& path);

/// Solves every regular file in `instances` (sorted by name) with `base`,
/// overriding its graph source. Parse or solve failures become failed rows.
/// Writes report.json and report.txt into base.output_dir when requested.
BenchReport cmd_bench(const std::filesystem::path& instances, const ExperimentConfig& base,
                      const std::vector<std::pair<std::string, double>>& references,
                      bool write_outputs = true);

struct EscapeRow {
  double temperature = 0.0;
  EscapeEstimate estimate;
};

std::vector<EscapeRow> cmd_escape(const SamplerConfig& sampler,
                                  const std::vector<double>& temperatures, std::size_t trials,
                                  std::size_t steps, std::uint64_t seed);
std::string escape_csv(const std::vector<EscapeRow>& rows);

struct AblationArm {
  std::string name;
  std::vector<double> best;
  double mean = 0.0;
  /// Against the untouched arm.
  std::optional<SignTest> versus_untouched;
};

struct AblationReport {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  AblationArm untouched;
  AblationArm override_arm;
  std::optional<AblationArm> reheat_arm;
  /// Override and untouched energies agree step for step on every seed.
  bool identical_traces = false;

  nlohmann::json to_json() const;
};

/// Paired runs over config.chains seeds: plain DMALA annealing versus DMALA
/// whose stepsize switches to alpha2 on wandering detection. With
/// `with_reheat`, a third arm runs the reheat controller on the same seeds.
AblationReport cmd_ablate_stepsize(const EnergyModel& model, const ExperimentConfig& config,
                                   double alpha2, bool with_reheat = true);

struct OracleResult {
  Optimum optimum;
  double objective = 0.0;
};

OracleResult cmd_oracle(const std::string& graph_path, const std::string& format,
                        ProblemKind problem, std::optional<double> lambda = std::nullopt);

}  // namespace resco
