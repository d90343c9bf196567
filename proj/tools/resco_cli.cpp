#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "resco/error.hpp"
#include "resco/harness.hpp"

namespace {

using namespace resco;
using nlohmann::json;

// Every flag is optional so that only what the user typed overrides the config file.
struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> problem;
  std::optional<std::string> graph;
  std::optional<std::string> format;
  std::optional<std::string> generator;
  std::optional<std::size_t> n;
  std::optional<double> p;
  std::optional<std::size_t> m;
  std::optional<std::uint64_t> graph_seed;
  std::optional<double> lambda;
  std::optional<std::string> sampler;
  std::optional<double> alpha;
  std::optional<int> path_length;
  std::optional<std::string> balancing;
  std::optional<std::string> flip_score;
  std::optional<double> t_init;
  std::optional<double> t_final;
  std::optional<std::size_t> length;
  bool no_reheat = false;
  bool reheat = false;
  std::optional<double> epsilon;
  std::optional<std::size_t> n_threshold;
  std::optional<std::size_t> window;
  std::optional<std::size_t> t_skip;
  std::optional<std::string> init;
  std::optional<std::size_t> chains;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> stride;
  std::optional<int> workers;
  std::optional<std::string> out;
  std::optional<double> reference;
};

void add_sampler_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--sampler", o.sampler, "rw | dmala | pas");
  cmd->add_option("--alpha", o.alpha, "DMALA stepsize");
  cmd->add_option("--path-length", o.path_length, "PathAux flips per step");
  cmd->add_option("--balancing", o.balancing, "sqrt | ratio");
  cmd->add_option("--flip-score", o.flip_score, "exact | gradient");
}

void add_experiment_flags(CLI::App* cmd, Overrides& o, bool with_graph) {
  cmd->add_option("-c,--config", o.config, "JSON experiment config");
  cmd->add_option("--problem", o.problem, "mis | maxclique | maxcut | toy1d | toy2d");
  if (with_graph) {
    cmd->add_option("-g,--graph", o.graph, "graph file ('-' for stdin)");
    cmd->add_option("--generator", o.generator, "er | ba, used without --graph");
    cmd->add_option("--n", o.n, "generator node count");
    cmd->add_option("--p", o.p, "ER edge probability");
    cmd->add_option("--m", o.m, "BA edges per new node");
    cmd->add_option("--graph-seed", o.graph_seed, "generator seed");
  }
  cmd->add_option("--format", o.format, "auto | edgelist | dimacs");
  cmd->add_option("--lambda", o.lambda, "penalty coefficient");
  add_sampler_flags(cmd, o);
  cmd->add_option("--t-init", o.t_init);
  cmd->add_option("--t-final", o.t_final);
  cmd->add_option("-L,--length", o.length, "chain length");
  cmd->add_flag("--no-reheat", o.no_reheat, "plain annealing");
  cmd->add_flag("--reheat", o.reheat, "enable reheat with defaults if the config disables it");
  cmd->add_option("--epsilon", o.epsilon, "wandering threshold");
  cmd->add_option("--n-threshold", o.n_threshold, "consecutive steps before detection");
  cmd->add_option("--window", o.window, "specific-heat window M");
  cmd->add_option("--t-skip", o.t_skip);
  cmd->add_option("--init", o.init, "random | zeros");
  cmd->add_option("--chains", o.chains);
  cmd->add_option("-s,--seed", o.seed, "master seed");
  cmd->add_option("--stride", o.stride, "state snapshot stride, 0 disables");
  cmd->add_option("-j,--workers", o.workers, "OpenMP threads, 0 = default");
  cmd->add_option("-o,--out", o.out, "output directory");
  cmd->add_option("--reference", o.reference, "known optimum objective");
}

template <typename T, typename U>
void set_if(const std::optional<T>& v, U& dst) {
  if (v) dst = *v;
}

void apply_sampler(const Overrides& o, SamplerConfig& s) {
  if (o.sampler) s.kind = sampler_from_name(*o.sampler);
  set_if(o.alpha, s.alpha);
  set_if(o.path_length, s.path_length);
  if (o.balancing) s.balancing = balancing_from_name(*o.balancing);
  if (o.flip_score) s.flip_score = flip_score_from_name(*o.flip_score);
}

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig c = o.config ? load_config(*o.config) : ExperimentConfig{};
  if (o.problem) c.problem = problem_from_name(*o.problem);
  if (o.graph) {
    c.graph.path = *o.graph;
    c.graph.generator.clear();
  }
  if (o.generator) {
    c.graph.generator = *o.generator;
    if (!o.graph) c.graph.path.clear();
  }
  set_if(o.format, c.graph.format);
  set_if(o.n, c.graph.n);
  set_if(o.p, c.graph.p);
  set_if(o.m, c.graph.m);
  set_if(o.graph_seed, c.graph.seed);
  if (o.lambda) c.lambda = *o.lambda;
  apply_sampler(o, c.sampler);
  set_if(o.t_init, c.t_init);
  set_if(o.t_final, c.t_final);
  set_if(o.length, c.length);
  if (o.no_reheat && o.reheat) throw Error(ErrorKind::Config, "--reheat and --no-reheat conflict");
  if (o.no_reheat) c.reheat.reset();
  if (o.reheat && !c.reheat) c.reheat = ReheatConfig{};
  const bool reheat_flags = o.epsilon || o.n_threshold || o.window || o.t_skip;
  if (reheat_flags) {
    if (!c.reheat) throw Error(ErrorKind::Config, "reheat parameters given but reheat is disabled");
    set_if(o.epsilon, c.reheat->epsilon);
    set_if(o.n_threshold, c.reheat->n_threshold);
    set_if(o.window, c.reheat->m);
    set_if(o.t_skip, c.reheat->t_skip);
  }
  if (o.init) {
    if (*o.init == "random") c.init = InitMode::Random;
    else if (*o.init == "zeros") c.init = InitMode::Zeros;
    else throw Error(ErrorKind::Config, "unknown init mode '" + *o.init + "'");
  }
  set_if(o.chains, c.chains);
  set_if(o.seed, c.master_seed);
  set_if(o.stride, c.state_stride);
  set_if(o.workers, c.workers);
  set_if(o.out, c.output_dir);
  if (o.reference) c.reference = *o.reference;
  return c;
}

std::vector<double> parse_temperatures(const std::string& list) {
  std::vector<double> temps;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const std::string tok = list.substr(start, comma - start);
    try {
      std::size_t used = 0;
      temps.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parameter, "bad temperature '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return temps;
}

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path || *path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(*path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + *path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated annealing with reheating for binary combinatorial problems"};
  app.require_subcommand(1);

  Overrides solve_o;
  auto* solve = app.add_subcommand("solve", "run annealing chains on one instance");
  add_experiment_flags(solve, solve_o, true);

  Overrides bench_o;
  std::string bench_dir;
  std::optional<std::string> references;
  auto* bench = app.add_subcommand("bench", "solve every instance in a directory");
  bench->add_option("instances", bench_dir, "directory of graph files")->required();
  bench->add_option("-r,--references", references, "CSV of instance,reference");
  add_experiment_flags(bench, bench_o, false);

  SamplerConfig escape_sampler;
  escape_sampler.kind = SamplerKind::DMALA;
  Overrides escape_o;
  std::string temps = "2,1,0.5,0.2,0.1,0.05";
  std::size_t trials = 100000;
  std::size_t steps = 20;
  std::uint64_t escape_seed = 0;
  std::optional<std::string> escape_out;
  auto* escape = app.add_subcommand("escape", "escaping rate from (0,0) on the 2-D toy");
  add_sampler_flags(escape, escape_o);
  escape->add_option("-T,--temperatures", temps, "comma-separated list");
  escape->add_option("--trials", trials);
  escape->add_option("--steps", steps);
  escape->add_option("-s,--seed", escape_seed);
  escape->add_option("-o,--out", escape_out, "CSV file, default stdout");

  Overrides ablate_o;
  double alpha2 = 0.0;
  bool skip_reheat_arm = false;
  std::optional<std::string> ablate_out;
  auto* ablate = app.add_subcommand("ablate-stepsize",
                                    "DMALA: switch stepsize on detection instead of reheating");
  add_experiment_flags(ablate, ablate_o, true);
  ablate->add_option("--alpha2", alpha2, "stepsize used after detection")->required();
  ablate->add_flag("--no-reheat-arm", skip_reheat_arm, "skip the reheat comparison arm");
  ablate->add_option("--report", ablate_out, "JSON file, default stdout");

  std::string oracle_graph;
  std::string oracle_problem = "mis";
  std::string oracle_format = "auto";
  std::optional<double> oracle_lambda;
  auto* oracle = app.add_subcommand("oracle", "exact optimum by enumeration (n <= 25)");
  oracle->add_option("graph", oracle_graph, "graph file")->required();
  oracle->add_option("--problem", oracle_problem, "mis | maxclique | maxcut");
  oracle->add_option("--format", oracle_format, "auto | edgelist | dimacs");
  oracle->add_option("--lambda", oracle_lambda);

  std::string gen_model = "er";
  std::size_t gen_n = 0;
  double gen_p = 0.05;
  std::size_t gen_m = 1;
  std::uint64_t gen_seed = 0;
  std::string gen_format = "edgelist";
  std::optional<std::string> gen_out;
  auto* gen = app.add_subcommand("gen-graph", "write a random graph");
  gen->add_option("--model", gen_model, "er | ba");
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--p", gen_p, "ER edge probability");
  gen->add_option("--m", gen_m, "BA edges per new node");
  gen->add_option("-s,--seed", gen_seed);
  gen->add_option("--format", gen_format, "edgelist | dimacs");
  gen->add_option("-o,--out", gen_out, "file, default stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const ExperimentConfig cfg = resolve(solve_o);
      const RunResult run = cmd_solve(cfg);
      std::cout << "best objective: " << run.aggregate_best << "\n";
      if (run.repaired_best) std::cout << "repaired objective: " << *run.repaired_best << "\n";
      std::cout << "summary: " << (std::filesystem::path(cfg.output_dir) / "summary.json").string()
                << "\n";
    } else if (*bench) {
      const ExperimentConfig cfg = resolve(bench_o);
      const auto refs = references ? load_references(*references)
                                   : std::vector<std::pair<std::string, double>>{};
      const BenchReport report = cmd_bench(bench_dir, cfg, refs);
      for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << report.to_table();
    } else if (*escape) {
      apply_sampler(escape_o, escape_sampler);
      const auto rows =
          cmd_escape(escape_sampler, parse_temperatures(temps), trials, steps, escape_seed);
      emit(escape_csv(rows), escape_out);
    } else if (*ablate) {
      const ExperimentConfig cfg = resolve(ablate_o);
      const EnergyModel model = build_model(cfg);
      const AblationReport report = cmd_ablate_stepsize(model, cfg, alpha2, !skip_reheat_arm);
      emit(report.to_json().dump(2) + "\n", ablate_out);
    } else if (*oracle) {
      const OracleResult r =
          cmd_oracle(oracle_graph, oracle_format, problem_from_name(oracle_problem), oracle_lambda);
      const json j = {{"objective", r.objective},
                      {"energy", r.optimum.energy},
                      {"state", state_to_string(r.optimum.state)}};
      std::cout << j.dump(2) << "\n";
    } else if (*gen) {
      Graph g;
      if (gen_model == "er") g = gen_er(gen_n, gen_p, gen_seed);
      else if (gen_model == "ba") g = gen_ba(gen_n, gen_m, gen_seed);
      else throw Error(ErrorKind::Parameter, "unknown graph model '" + gen_model + "'");
      const GraphFormat fmt = format_from_name(gen_format);
      std::ostringstream text;
      if (fmt == GraphFormat::Dimacs) write_dimacs(g, text);
      else write_edge_list(g, text);
      emit(text.str(), gen_out);
    }
  } catch (const Error& e) {
    std::cerr << "resco: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "resco: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
