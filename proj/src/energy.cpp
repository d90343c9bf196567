#include "resco/energy.hpp"

#include <algorithm>
#include <cmath>

#include "resco/error.hpp"

namespace resco {

const char* to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::MIS: return "mis";
    case ProblemKind::MaxClique: return "maxclique";
    case ProblemKind::MaxCut: return "maxcut";
    case ProblemKind::Toy1D: return "toy1d";
    case ProblemKind::Toy2D: return "toy2d";
  }
  return "?";
}

ProblemKind problem_from_name(const std::string& name) {
  if (name == "mis") return ProblemKind::MIS;
  if (name == "maxclique") return ProblemKind::MaxClique;
  if (name == "maxcut") return ProblemKind::MaxCut;
  if (name == "toy1d") return ProblemKind::Toy1D;
  if (name == "toy2d") return ProblemKind::Toy2D;
  throw Error(ErrorKind::Parameter, "unknown problem '" + name + "'");
}

EnergyModel::EnergyModel(ProblemKind kind, std::size_t dim, double lambda,
                         std::shared_ptr<const Graph> graph,
                         std::shared_ptr<const Graph> interaction)
    : kind_(kind),
      dim_(dim),
      lambda_(lambda),
      graph_(std::move(graph)),
      interaction_(std::move(interaction)) {}

EnergyModel EnergyModel::mis(Graph g, double lambda) {
  require(lambda > 1.0, ErrorKind::Parameter, "MIS penalty lambda must exceed 1");
  auto shared = std::make_shared<const Graph>(std::move(g));
  return EnergyModel(ProblemKind::MIS, shared->num_nodes(), lambda, shared, shared);
}

EnergyModel EnergyModel::max_clique(Graph g, double lambda) {
  require(lambda > 0.0, ErrorKind::Parameter, "MaxClique penalty lambda must be positive");
  auto shared = std::make_shared<const Graph>(std::move(g));
  auto comp = std::make_shared<const Graph>(complement(*shared));
  return EnergyModel(ProblemKind::MaxClique, shared->num_nodes(), lambda, shared, comp);
}

EnergyModel EnergyModel::max_cut(Graph g) {
  auto shared = std::make_shared<const Graph>(std::move(g));
  return EnergyModel(ProblemKind::MaxCut, shared->num_nodes(), 0.0, shared, shared);
}

EnergyModel EnergyModel::toy1d() {
  return EnergyModel(ProblemKind::Toy1D, 1, 0.0, nullptr, nullptr);
}

EnergyModel EnergyModel::toy2d() {
  return EnergyModel(ProblemKind::Toy2D, 2, 0.0, nullptr, nullptr);
}

EnergyModel EnergyModel::make(ProblemKind kind, Graph g, double lambda) {
  switch (kind) {
    case ProblemKind::MIS:
      return mis(std::move(g), lambda > 0 ? lambda : kDefaultMisLambda);
    case ProblemKind::MaxClique:
      return max_clique(std::move(g), lambda > 0 ? lambda : kDefaultCliqueLambda);
    case ProblemKind::MaxCut: return max_cut(std::move(g));
    case ProblemKind::Toy1D: return toy1d();
    case ProblemKind::Toy2D: return toy2d();
  }
  throw Error(ErrorKind::Parameter, "unknown problem kind");
}

void EnergyModel::check_dim(std::size_t size) const {
  if (size != dim_) {
    throw Error(ErrorKind::Contract, "state has dimension " + std::to_string(size) +
                                         ", model expects " + std::to_string(dim_));
  }
}

namespace {

double toy1d_value(double x) {
  return x * x * x * x / 4.0 - 4.0 * x * x * x / 3.0 + 15.0 * x * x / 8.0;
}

double toy1d_slope(double x) { return x * x * x - 4.0 * x * x + 15.0 * x / 4.0; }

double toy2d_value(double s) { return -s * (s - 1.5); }

double toy2d_slope(double s) { return -(2.0 * s - 1.5); }

}  // namespace

double EnergyModel::energy(std::span<const std::uint8_t> x) const {
  check_dim(x.size());
  switch (kind_) {
    case ProblemKind::MIS:
    case ProblemKind::MaxClique: {
      std::int64_t selected = 0;
      for (auto v : x) selected += v;
      std::int64_t violations = 0;
      for (const auto& [a, b] : interaction_->edges()) violations += x[a] & x[b];
      return penalized(selected, violations);
    }
    case ProblemKind::MaxCut: {
      std::int64_t cut = 0;
      for (const auto& [a, b] : graph_->edges()) cut += x[a] != x[b];
      return -static_cast<double>(cut);
    }
    case ProblemKind::Toy1D:
      require(x[0] <= kToy1DMax, ErrorKind::Range, "toy1d state must lie in {0..8}");
      return toy1d_value(x[0]);
    case ProblemKind::Toy2D: return toy2d_value(double(x[0]) + double(x[1]));
  }
  return 0.0;
}

double EnergyModel::relaxed_energy(std::span<const double> x) const {
  check_dim(x.size());
  switch (kind_) {
    case ProblemKind::MIS:
    case ProblemKind::MaxClique: {
      double linear = 0.0;
      for (double v : x) linear += v;
      double quad = 0.0;
      for (const auto& [a, b] : interaction_->edges()) quad += x[a] * x[b];
      return -linear + lambda_ * quad;
    }
    case ProblemKind::MaxCut: {
      double total = 0.0;
      for (const auto& [a, b] : graph_->edges()) {
        total += (1.0 - (2.0 * x[a] - 1.0) * (2.0 * x[b] - 1.0)) / 2.0;
      }
      return -total;
    }
    case ProblemKind::Toy1D: return toy1d_value(x[0]);
    case ProblemKind::Toy2D: return toy2d_value(x[0] + x[1]);
  }
  return 0.0;
}

void EnergyModel::gradient_into(std::span<const std::uint8_t> x,
                                std::span<double> out) const {
  check_dim(x.size());
  check_dim(out.size());
  switch (kind_) {
    case ProblemKind::MIS:
    case ProblemKind::MaxClique:
      for (std::size_t i = 0; i < dim_; ++i) {
        std::int64_t c = 0;
        for (NodeId j : interaction_->neighbors(NodeId(i))) c += x[j];
        out[i] = -1.0 + lambda_ * static_cast<double>(c);
      }
      break;
    case ProblemKind::MaxCut:
      for (std::size_t i = 0; i < dim_; ++i) {
        std::int64_t s = 0;
        for (NodeId j : graph_->neighbors(NodeId(i))) s += 2 * x[j] - 1;
        out[i] = static_cast<double>(s);
      }
      break;
    case ProblemKind::Toy1D: out[0] = toy1d_slope(x[0]); break;
    case ProblemKind::Toy2D: {
      const double g = toy2d_slope(double(x[0]) + double(x[1]));
      out[0] = g;
      out[1] = g;
      break;
    }
  }
}

std::vector<double> EnergyModel::gradient(std::span<const std::uint8_t> x) const {
  std::vector<double> out(dim_);
  gradient_into(x, out);
  return out;
}

std::vector<double> EnergyModel::relaxed_gradient(std::span<const double> x) const {
  check_dim(x.size());
  std::vector<double> out(dim_);
  switch (kind_) {
    case ProblemKind::MIS:
    case ProblemKind::MaxClique:
      for (std::size_t i = 0; i < dim_; ++i) {
        double c = 0.0;
        for (NodeId j : interaction_->neighbors(NodeId(i))) c += x[j];
        out[i] = -1.0 + lambda_ * c;
      }
      break;
    case ProblemKind::MaxCut:
      for (std::size_t i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (NodeId j : graph_->neighbors(NodeId(i))) s += 2.0 * x[j] - 1.0;
        out[i] = s;
      }
      break;
    case ProblemKind::Toy1D: out[0] = toy1d_slope(x[0]); break;
    case ProblemKind::Toy2D: out[0] = out[1] = toy2d_slope(x[0] + x[1]); break;
  }
  return out;
}

double EnergyModel::flip_delta(std::span<const std::uint8_t> x, std::size_t i) const {
  check_dim(x.size());
  require(is_binary(), ErrorKind::Unsupported, "flip_delta needs a binary model");
  const double dir = 1.0 - 2.0 * x[i];
  switch (kind_) {
    case ProblemKind::MIS:
    case ProblemKind::MaxClique: {
      std::int64_t c = 0;
      for (NodeId j : interaction_->neighbors(NodeId(i))) c += x[j];
      return dir * (-1.0 + lambda_ * static_cast<double>(c));
    }
    case ProblemKind::MaxCut: {
      std::int64_t s = 0;
      for (NodeId j : graph_->neighbors(NodeId(i))) s += 2 * x[j] - 1;
      return dir * static_cast<double>(s);
    }
    case ProblemKind::Toy2D: {
      const double s = double(x[0]) + double(x[1]);
      return toy2d_value(s + dir) - toy2d_value(s);
    }
    case ProblemKind::Toy1D: break;
  }
  return 0.0;
}

void EnergyModel::flip_deltas_into(std::span<const std::uint8_t> x,
                                   std::span<double> out) const {
  check_dim(x.size());
  check_dim(out.size());
  require(is_binary(), ErrorKind::Unsupported, "flip_deltas needs a binary model");
  if (kind_ == ProblemKind::Toy2D) {
    for (std::size_t i = 0; i < dim_; ++i) out[i] = flip_delta(x, i);
    return;
  }
  // Linear in x_i for the graph models, so the exact delta is (1 - 2x_i) grad_i.
  gradient_into(x, out);
  for (std::size_t i = 0; i < dim_; ++i) out[i] *= 1.0 - 2.0 * x[i];
}

double energy(const EnergyModel& model, std::span<const std::uint8_t> x) {
  return model.energy(x);
}

std::vector<double> gradient(const EnergyModel& model, std::span<const std::uint8_t> x) {
  return model.gradient(x);
}

std::vector<double> finite_difference_gradient(const EnergyModel& model,
                                               std::span<const double> x, double h) {
  require(h > 0.0, ErrorKind::Parameter, "finite-difference step must be positive");
  std::vector<double> probe(x.begin(), x.end());
  std::vector<double> out(probe.size());
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double saved = probe[i];
    probe[i] = saved + h;
    const double up = model.relaxed_energy(probe);
    probe[i] = saved - h;
    const double down = model.relaxed_energy(probe);
    probe[i] = saved;
    out[i] = (up - down) / (2.0 * h);
  }
  return out;
}

double objective(const EnergyModel& model, std::span<const std::uint8_t> x) {
  return -model.energy(x);
}

std::size_t count_violations(const EnergyModel& model, std::span<const std::uint8_t> x) {
  require(model.kind() == ProblemKind::MIS || model.kind() == ProblemKind::MaxClique,
          ErrorKind::Unsupported, "violations are defined for MIS and MaxClique only");
  std::size_t violations = 0;
  for (const auto& [a, b] : model.interaction_graph().edges()) violations += x[a] & x[b];
  return violations;
}

State repair(const EnergyModel& model, std::span<const std::uint8_t> x) {
  if (model.kind() != ProblemKind::MIS && model.kind() != ProblemKind::MaxClique) {
    throw Error(ErrorKind::Unsupported,
                std::string("repair is not defined for ") + to_string(model.kind()));
  }
  require(x.size() == model.dim(), ErrorKind::Contract, "state dimension mismatch");
  const Graph& g = model.interaction_graph();
  State out(x.begin(), x.end());
  std::vector<std::size_t> conflicts(out.size(), 0);
  for (const auto& [a, b] : g.edges()) {
    if (out[a] && out[b]) {
      ++conflicts[a];
      ++conflicts[b];
    }
  }
  for (;;) {
    std::size_t worst = 0;
    std::size_t worst_count = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i] && conflicts[i] > worst_count) {
        worst = i;
        worst_count = conflicts[i];
      }
    }
    if (worst_count == 0) break;
    out[worst] = 0;
    conflicts[worst] = 0;
    for (NodeId j : g.neighbors(NodeId(worst))) {
      if (out[j]) --conflicts[j];
    }
  }
  return out;
}

std::size_t hamming_distance(std::span<const std::uint8_t> a,
                             std::span<const std::uint8_t> b) {
  require(a.size() == b.size(), ErrorKind::Contract, "state dimension mismatch");
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

std::string state_to_string(std::span<const std::uint8_t> x) {
  std::string s;
  s.reserve(x.size());
  for (auto v : x) s.push_back(static_cast<char>('0' + v));
  return s;
}

}  // namespace resco
