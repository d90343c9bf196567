#include "resco/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "resco/error.hpp"

namespace resco {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  require(j.is_object(), ErrorKind::Config, where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw Error(ErrorKind::Config, "unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

std::string init_name(InitMode m) { return m == InitMode::Random ? "random" : "zeros"; }

InitMode init_from_name(const std::string& s) {
  if (s == "random") return InitMode::Random;
  if (s == "zeros") return InitMode::Zeros;
  throw Error(ErrorKind::Config, "unknown init mode '" + s + "'");
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << text;
}

std::string chain_file(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "chain_%03zu.csv", index);
  return buf;
}

bool repairable(ProblemKind k) { return k == ProblemKind::MIS || k == ProblemKind::MaxClique; }

}  // namespace

void ExperimentConfig::validate() const {
  require(chains >= 1, ErrorKind::Config, "chains must be at least 1");
  require(t_init > 0 && t_final > 0 && t_final <= t_init, ErrorKind::Config,
          "schedule needs 0 < t_final <= t_init");
  require(length >= 1, ErrorKind::Config, "chain length must be at least 1");
  if (lambda) require(*lambda > 0, ErrorKind::Config, "lambda must be positive");
  try {
    sampler.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
  if (reheat) reheat->validate(length);
  const bool needs_graph = problem != ProblemKind::Toy1D && problem != ProblemKind::Toy2D;
  if (needs_graph) {
    require(!graph.path.empty() || !graph.generator.empty(), ErrorKind::Config,
            "graph problems need graph.path or graph.generator");
  }
}

ChainSetup ExperimentConfig::chain_setup() const {
  ChainSetup setup;
  setup.sampler = sampler;
  setup.schedule = Schedule(t_init, t_final, length);
  setup.reheat = reheat;
  setup.options.init = init;
  setup.options.state_stride = state_stride;
  setup.master_seed = master_seed;
  setup.chains = chains;
  return setup;
}

void to_json(json& j, const ExperimentConfig& c) {
  json graph = {{"path", c.graph.path},         {"format", c.graph.format},
                {"generator", c.graph.generator}, {"n", c.graph.n},
                {"p", c.graph.p},               {"m", c.graph.m},
                {"seed", c.graph.seed}};
  json sampler = {{"kind", to_string(c.sampler.kind)},
                  {"alpha", c.sampler.alpha},
                  {"path_length", c.sampler.path_length},
                  {"balancing", to_string(c.sampler.balancing)},
                  {"flip_score", to_string(c.sampler.flip_score)},
                  {"stepsize_override", optional_json(c.sampler.stepsize_override)}};
  json reheat = nullptr;
  if (c.reheat) {
    reheat = {{"epsilon", c.reheat->epsilon},
              {"n_threshold", c.reheat->n_threshold},
              {"m", c.reheat->m},
              {"t_skip", c.reheat->t_skip},
              {"freeze_after_first_reheat", c.reheat->freeze_after_first_reheat}};
  }
  j = {{"problem", to_string(c.problem)},
       {"graph", graph},
       {"lambda", optional_json(c.lambda)},
       {"sampler", sampler},
       {"schedule", {{"t_init", c.t_init}, {"t_final", c.t_final}, {"length", c.length}}},
       {"reheat", reheat},
       {"init", init_name(c.init)},
       {"chains", c.chains},
       {"master_seed", c.master_seed},
       {"state_stride", c.state_stride},
       {"workers", c.workers},
       {"output_dir", c.output_dir},
       {"reference", optional_json(c.reference)}};
}

void from_json(const json& j, ExperimentConfig& c) {
  try {
    reject_unknown_keys(j,
                        {"problem", "graph", "lambda", "sampler", "schedule", "reheat", "init",
                         "chains", "master_seed", "state_stride", "workers", "output_dir",
                         "reference"},
                        "config");
    if (j.contains("problem")) c.problem = problem_from_name(j.at("problem").get<std::string>());
    if (j.contains("graph")) {
      const auto& g = j.at("graph");
      reject_unknown_keys(g, {"path", "format", "generator", "n", "p", "m", "seed"}, "graph");
      read_if(g, "path", c.graph.path);
      read_if(g, "format", c.graph.format);
      read_if(g, "generator", c.graph.generator);
      read_if(g, "n", c.graph.n);
      read_if(g, "p", c.graph.p);
      read_if(g, "m", c.graph.m);
      read_if(g, "seed", c.graph.seed);
    }
    if (j.contains("lambda")) {
      c.lambda = j.at("lambda").is_null() ? std::nullopt
                                          : std::optional<double>(j.at("lambda").get<double>());
    }
    if (j.contains("sampler")) {
      const auto& s = j.at("sampler");
      reject_unknown_keys(
          s, {"kind", "alpha", "path_length", "balancing", "flip_score", "stepsize_override"},
          "sampler");
      if (s.contains("kind")) c.sampler.kind = sampler_from_name(s.at("kind").get<std::string>());
      read_if(s, "alpha", c.sampler.alpha);
      read_if(s, "path_length", c.sampler.path_length);
      if (s.contains("balancing")) {
        c.sampler.balancing = balancing_from_name(s.at("balancing").get<std::string>());
      }
      if (s.contains("flip_score")) {
        c.sampler.flip_score = flip_score_from_name(s.at("flip_score").get<std::string>());
      }
      if (s.contains("stepsize_override")) {
        const auto& v = s.at("stepsize_override");
        c.sampler.stepsize_override =
            v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      }
    }
    if (j.contains("schedule")) {
      const auto& s = j.at("schedule");
      reject_unknown_keys(s, {"t_init", "t_final", "length"}, "schedule");
      read_if(s, "t_init", c.t_init);
      read_if(s, "t_final", c.t_final);
      read_if(s, "length", c.length);
    }
    if (j.contains("reheat")) {
      const auto& r = j.at("reheat");
      if (r.is_null()) {
        c.reheat.reset();
      } else {
        reject_unknown_keys(
            r, {"epsilon", "n_threshold", "m", "t_skip", "freeze_after_first_reheat"}, "reheat");
        ReheatConfig rc;
        read_if(r, "epsilon", rc.epsilon);
        read_if(r, "n_threshold", rc.n_threshold);
        read_if(r, "m", rc.m);
        read_if(r, "t_skip", rc.t_skip);
        read_if(r, "freeze_after_first_reheat", rc.freeze_after_first_reheat);
        c.reheat = rc;
      }
    }
    if (j.contains("init")) c.init = init_from_name(j.at("init").get<std::string>());
    read_if(j, "chains", c.chains);
    read_if(j, "master_seed", c.master_seed);
    read_if(j, "state_stride", c.state_stride);
    read_if(j, "workers", c.workers);
    read_if(j, "output_dir", c.output_dir);
    if (j.contains("reference")) {
      c.reference = j.at("reference").is_null()
                        ? std::nullopt
                        : std::optional<double>(j.at("reference").get<double>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("malformed config: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    throw Error(ErrorKind::Config, e.what());
  }
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path.string() + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
  }
  return j.get<ExperimentConfig>();
}

EnergyModel build_model(const ExperimentConfig& config) {
  if (config.problem == ProblemKind::Toy1D) return EnergyModel::toy1d();
  if (config.problem == ProblemKind::Toy2D) return EnergyModel::toy2d();
  const auto& src = config.graph;
  Graph g;
  if (!src.path.empty()) {
    const GraphFormat fmt =
        src.format == "auto" ? format_from_path(src.path) : format_from_name(src.format);
    g = load_graph(src.path, fmt);
  } else if (src.generator == "er") {
    g = gen_er(src.n, src.p, src.seed);
  } else if (src.generator == "ba") {
    g = gen_ba(src.n, src.m, src.seed);
  } else {
    throw Error(ErrorKind::Config, "unknown graph generator '" + src.generator + "'");
  }
  return EnergyModel::make(config.problem, std::move(g), config.lambda.value_or(0.0));
}

json RunResult::to_json() const {
  json chains_json = json::array();
  json timing = json::array();
  for (const auto& c : chains) {
    chains_json.push_back({{"index", c.index},
                           {"seed", c.seed},
                           {"best_objective", c.best_objective},
                           {"best_state", c.best_state},
                           {"best_step", c.best_step},
                           {"repaired_objective", optional_json(c.repaired_objective)},
                           {"reheats", c.reheats},
                           {"detections", c.detections},
                           {"trace", c.trace_path},
                           {"states", c.states_path}});
    timing.push_back({{"index", c.index}, {"wall_seconds", c.wall_seconds}});
  }
  return {{"chains", chains_json},
          {"aggregate_best", aggregate_best},
          {"mean_best", mean_best},
          {"best_state", best_state},
          {"repaired_best", optional_json(repaired_best)},
          {"reference", optional_json(reference)},
          {"drop", optional_json(drop)},
          {"timing", {{"chains", timing}}}};
}

void write_trace_csv(const ChainTrace& trace, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << "step,energy,temperature,best_energy,reheat_flag\n";
  out << std::setprecision(17);
  std::size_t next_reheat = 0;
  double best = 0.0;
  for (std::size_t t = 1; t <= trace.energies.size(); ++t) {
    const double e = trace.energies[t - 1];
    best = t == 1 ? e : std::min(best, e);
    int flag = 0;
    if (next_reheat < trace.reheat_steps.size() && trace.reheat_steps[next_reheat] == t) {
      flag = 1;
      ++next_reheat;
    }
    out << t << ',' << e << ',' << trace.temperatures[t - 1] << ',' << best << ',' << flag
        << '\n';
  }
}

void write_states_csv(const StateTrace& states, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << "step,state\n";
  for (std::size_t k = 0; k < states.states.size(); ++k) {
    out << states.step_indices[k] << ',' << state_to_string(states.states[k]) << '\n';
  }
}

RunResult solve_model(const EnergyModel& model, const ExperimentConfig& config,
                      bool write_outputs) {
  config.validate();
  const ChainSetup setup = config.chain_setup();
  const auto results = run_chains(model, setup, config.workers);

  fs::path out_dir = config.output_dir;
  if (write_outputs) {
    fs::create_directories(out_dir / "traces");
    if (config.state_stride > 0) fs::create_directories(out_dir / "states");
    json echoed = config;
    write_text(out_dir / "config.json", echoed.dump(2) + "\n");
  }

  RunResult run;
  std::vector<double> bests;
  for (const auto& r : results) {
    ChainSummary s;
    s.index = r.index;
    s.seed = r.seed;
    s.best_objective = -r.trace.best_energy;
    s.best_state = state_to_string(r.trace.best_state);
    s.best_step = r.trace.best_step;
    if (repairable(model.kind())) s.repaired_objective = objective(model, repair(model, r.trace.best_state));
    s.reheats = r.trace.reheat_steps.size();
    s.detections = r.trace.detection_steps.size();
    s.wall_seconds = r.wall_seconds;
    if (write_outputs) {
      const fs::path trace_rel = fs::path("traces") / chain_file(r.index);
      write_trace_csv(r.trace, out_dir / trace_rel);
      s.trace_path = trace_rel.generic_string();
      if (config.state_stride > 0) {
        const fs::path states_rel = fs::path("states") / chain_file(r.index);
        write_states_csv(r.trace.states, out_dir / states_rel);
        s.states_path = states_rel.generic_string();
      }
    }
    bests.push_back(s.best_objective);
    run.chains.push_back(std::move(s));
  }
  // Ties keep the lowest chain index.
  std::size_t arg = 0;
  for (std::size_t k = 1; k < run.chains.size(); ++k) {
    if (run.chains[k].best_objective > run.chains[arg].best_objective) arg = k;
  }
  run.aggregate_best = run.chains[arg].best_objective;
  run.best_state = run.chains[arg].best_state;
  run.mean_best = mean(bests);
  if (repairable(model.kind())) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& c : run.chains) best = std::max(best, *c.repaired_objective);
    run.repaired_best = best;
  }
  if (config.reference) {
    run.reference = config.reference;
    if (*config.reference != 0.0) {
      run.drop = (*config.reference - run.aggregate_best) / *config.reference;
    }
  }
  if (write_outputs) write_text(out_dir / "summary.json", run.to_json().dump(2) + "\n");
  return run;
}

RunResult cmd_solve(const ExperimentConfig& config, bool write_outputs) {
  config.validate();
  return solve_model(build_model(config), config, write_outputs);
}

std::vector<std::pair<std::string, double>> load_references(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open references '" + path.string() + "'");
  std::vector<std::pair<std::string, double>> refs;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ParseError(number, "expected 'instance,reference'");
    const std::string name = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    if (name == "instance") continue;  // header row
    try {
      refs.emplace_back(name, std::stod(value));
    } catch (const std::exception&) {
      throw ParseError(number, "reference is not a number: '" + value + "'");
    }
  }
  return refs;
}

json BenchReport::to_json() const {
  json rows_json = json::array();
  for (const auto& r : rows) {
    rows_json.push_back({{"instance", r.instance},
                         {"ok", r.ok},
                         {"error", r.error},
                         {"nodes", r.nodes},
                         {"objective", r.objective},
                         {"repaired", optional_json(r.repaired)},
                         {"reference", optional_json(r.reference)},
                         {"ratio", optional_json(r.ratio)}});
  }
  return {{"rows", rows_json},
          {"instances", rows.size()},
          {"failures", failures},
          {"mean_ratio", optional_json(mean_ratio)},
          {"warnings", warnings}};
}

std::string BenchReport::to_table() const {
  std::size_t width = 8;
  for (const auto& r : rows) width = std::max(width, r.instance.size());
  std::ostringstream out;
  auto opt = [](const std::optional<double>& v) {
    if (!v) return std::string("-");
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << *v;
    return s.str();
  };
  out << std::left << std::setw(int(width)) << "instance" << "  " << std::right
      << std::setw(6) << "nodes" << "  " << std::setw(12) << "objective" << "  "
      << std::setw(12) << "repaired" << "  " << std::setw(12) << "reference" << "  "
      << std::setw(8) << "ratio" << "\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(int(width)) << r.instance << "  " << std::right;
    if (!r.ok) {
      out << "FAILED: " << r.error << "\n";
      continue;
    }
    std::ostringstream obj;
    obj << std::fixed << std::setprecision(4) << r.objective;
    out << std::setw(6) << r.nodes << "  " << std::setw(12) << obj.str() << "  "
        << std::setw(12) << opt(r.repaired) << "  " << std::setw(12) << opt(r.reference)
        << "  " << std::setw(8) << opt(r.ratio) << "\n";
  }
  out << "instances: " << rows.size() << "  failures: " << failures;
  if (mean_ratio) out << "  mean ratio: " << opt(mean_ratio);
  out << "\n";
  return out.str();
}

BenchReport cmd_bench(const fs::path& instances, const ExperimentConfig& base,
                      const std::vector<std::pair<std::string, double>>& references,
                      bool write_outputs) {
  if (!fs::is_directory(instances)) {
    throw Error(ErrorKind::Io, "instance directory '" + instances.string() + "' not found");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(instances)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  BenchReport report;
  if (files.empty()) report.warnings.push_back("no instances in " + instances.string());

  std::vector<double> ratios;
  for (const auto& file : files) {
    BenchRow row;
    row.instance = file.filename().string();
    for (const auto& [name, value] : references) {
      if (name == row.instance || name == file.stem().string()) row.reference = value;
    }
    try {
      ExperimentConfig config = base;
      config.graph = GraphSource{};
      config.graph.path = file.string();
      config.graph.format = base.graph.format;
      config.output_dir = (fs::path(base.output_dir) / file.stem()).string();
      config.reference = row.reference;
      const EnergyModel model = build_model(config);
      row.nodes = model.dim();
      const RunResult run = solve_model(model, config, write_outputs);
      row.ok = true;
      row.objective = run.aggregate_best;
      row.repaired = run.repaired_best;
      if (row.reference && *row.reference != 0.0) {
        row.ratio = row.objective / *row.reference;
        ratios.push_back(*row.ratio);
      }
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
      ++report.failures;
    }
    report.rows.push_back(std::move(row));
  }
  if (!ratios.empty()) report.mean_ratio = mean(ratios);

  if (write_outputs) {
    fs::create_directories(base.output_dir);
    write_text(fs::path(base.output_dir) / "report.json", report.to_json().dump(2) + "\n");
    write_text(fs::path(base.output_dir) / "report.txt", report.to_table());
  }
  return report;
}

std::vector<EscapeRow> cmd_escape(const SamplerConfig& sampler,
                                  const std::vector<double>& temperatures, std::size_t trials,
                                  std::size_t steps, std::uint64_t seed) {
  require(trials >= 1, ErrorKind::Parameter, "escaping rate needs at least one trial");
  std::vector<EscapeRow> rows;
  for (double t : temperatures) rows.push_back({t, escaping_rate(sampler, t, trials, steps, seed)});
  return rows;
}

std::string escape_csv(const std::vector<EscapeRow>& rows) {
  std::ostringstream out;
  out << "temperature,rate,successes,trials,std_error\n" << std::setprecision(10);
  for (const auto& r : rows) {
    out << r.temperature << ',' << r.estimate.rate << ',' << r.estimate.successes << ','
        << r.estimate.trials << ',' << r.estimate.std_error << '\n';
  }
  return out.str();
}

json AblationReport::to_json() const {
  auto arm_json = [](const AblationArm& a) {
    json j = {{"name", a.name}, {"best", a.best}, {"mean", a.mean}};
    if (a.versus_untouched) {
      j["sign_test"] = {{"wins", a.versus_untouched->wins},
                        {"losses", a.versus_untouched->losses},
                        {"ties", a.versus_untouched->ties},
                        {"p_greater", a.versus_untouched->p_greater},
                        {"p_two_sided", a.versus_untouched->p_two_sided}};
    }
    return j;
  };
  json j = {{"alpha1", alpha1},
            {"alpha2", alpha2},
            {"untouched", arm_json(untouched)},
            {"override", arm_json(override_arm)},
            {"identical_traces", identical_traces}};
  j["reheat"] = reheat_arm ? arm_json(*reheat_arm) : json(nullptr);
  return j;
}

AblationReport cmd_ablate_stepsize(const EnergyModel& model, const ExperimentConfig& config,
                                   double alpha2, bool with_reheat) {
  if (config.sampler.kind != SamplerKind::DMALA) {
    throw Error(ErrorKind::Unsupported, "stepsize ablation requires the DMALA sampler");
  }
  require(alpha2 > 0.0, ErrorKind::Parameter, "alpha2 must be positive");
  ExperimentConfig base = config;
  if (!base.reheat) base.reheat = ReheatConfig{};
  base.sampler.stepsize_override.reset();
  base.validate();

  ChainSetup untouched = base.chain_setup();
  untouched.reheat.reset();
  untouched.options.state_stride = 0;
  ChainSetup overridden = untouched;
  overridden.reheat = base.reheat;
  overridden.sampler.stepsize_override = alpha2;

  const auto control = run_chains(model, untouched, base.workers);
  const auto treated = run_chains(model, overridden, base.workers);

  AblationReport report;
  report.alpha1 = base.sampler.alpha;
  report.alpha2 = alpha2;
  report.untouched.name = "untouched";
  report.override_arm.name = "override";
  report.identical_traces = true;
  for (std::size_t k = 0; k < control.size(); ++k) {
    report.untouched.best.push_back(-control[k].trace.best_energy);
    report.override_arm.best.push_back(-treated[k].trace.best_energy);
    if (control[k].trace.energies != treated[k].trace.energies) report.identical_traces = false;
  }
  report.untouched.mean = mean(report.untouched.best);
  report.override_arm.mean = mean(report.override_arm.best);
  report.override_arm.versus_untouched = sign_test(report.override_arm.best, report.untouched.best);

  if (with_reheat) {
    ChainSetup reheated = untouched;
    reheated.reheat = base.reheat;
    const auto rh = run_chains(model, reheated, base.workers);
    AblationArm arm;
    arm.name = "reheat";
    for (const auto& r : rh) arm.best.push_back(-r.trace.best_energy);
    arm.mean = mean(arm.best);
    arm.versus_untouched = sign_test(arm.best, report.untouched.best);
    report.reheat_arm = std::move(arm);
  }
  return report;
}

OracleResult cmd_oracle(const std::string& graph_path, const std::string& format,
                        ProblemKind problem, std::optional<double> lambda) {
  const GraphFormat fmt = format == "auto" ? format_from_path(graph_path) : format_from_name(format);
  Graph g = load_graph(graph_path, fmt);
  if (g.num_nodes() > kMaxBruteForceDim) {
    throw Error(ErrorKind::Size, "graph has " + std::to_string(g.num_nodes()) +
                                     " nodes; the exact oracle supports at most " +
                                     std::to_string(kMaxBruteForceDim));
  }
  const EnergyModel model = EnergyModel::make(problem, std::move(g), lambda.value_or(0.0));
  OracleResult result;
  result.optimum = brute_force_optimum(model);
  result.objective = -result.optimum.energy;
  return result;
}

}  // namespace resco
