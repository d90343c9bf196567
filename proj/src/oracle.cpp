#include "resco/oracle.hpp"

#include <bit>
#include <limits>
#include <vector>

#include "resco/error.hpp"

namespace resco {

namespace {

void check_size(const EnergyModel& model) {
  if (model.dim() > kMaxBruteForceDim) {
    throw Error(ErrorKind::Size, "exhaustive search supports at most " +
                                     std::to_string(kMaxBruteForceDim) + " variables, got " +
                                     std::to_string(model.dim()));
  }
}

State decode(std::uint64_t code, std::size_t dim) {
  State x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[i] = (code >> i) & 1U;
  return x;
}

Optimum toy1d_optimum(const EnergyModel& model) {
  Optimum best{{0}, model.energy(State{0})};
  for (int v = 1; v <= kToy1DMax; ++v) {
    State x{static_cast<std::uint8_t>(v)};
    const double e = model.energy(x);
    if (e < best.energy) best = {x, e};
  }
  return best;
}

struct Candidate {
  double energy = std::numeric_limits<double>::infinity();
  std::uint64_t code = std::numeric_limits<std::uint64_t>::max();

  void offer(double e, std::uint64_t c) {
    if (e < energy || (e == energy && c < code)) {
      energy = e;
      code = c;
    }
  }
};

// Energy bookkeeping for one Gray-code walk over the low `bits` coordinates.
class GrayWalker {
 public:
  explicit GrayWalker(const EnergyModel& model)
      : model_(model), graph_(model.interaction_graph()), x_(model.dim(), 0) {}

  void start(std::uint64_t code) {
    for (std::size_t i = 0; i < x_.size(); ++i) x_[i] = (code >> i) & 1U;
    selected_ = 0;
    pairs_ = 0;
    for (auto v : x_) selected_ += v;
    for (const auto& [a, b] : graph_.edges()) {
      pairs_ += model_.kind() == ProblemKind::MaxCut ? (x_[a] != x_[b]) : (x_[a] & x_[b]);
    }
  }

  void flip(std::size_t i) {
    std::int64_t on = 0;
    for (NodeId j : graph_.neighbors(NodeId(i))) on += x_[j];
    const auto deg = static_cast<std::int64_t>(graph_.degree(NodeId(i)));
    if (model_.kind() == ProblemKind::MaxCut) {
      // Edges to neighbours with the old value of x_i become cut, and vice versa.
      const std::int64_t same = x_[i] ? on : deg - on;
      pairs_ += same - (deg - same);
    } else {
      pairs_ += x_[i] ? -on : on;
      selected_ += x_[i] ? -1 : 1;
    }
    x_[i] ^= 1U;
  }

  double energy() const {
    if (model_.kind() == ProblemKind::MaxCut) return -static_cast<double>(pairs_);
    return model_.penalized(selected_, pairs_);
  }

 private:
  const EnergyModel& model_;
  const Graph& graph_;
  State x_;
  std::int64_t selected_ = 0;
  std::int64_t pairs_ = 0;
};

}  // namespace

Optimum brute_force_optimum_serial(const EnergyModel& model) {
  if (model.kind() == ProblemKind::Toy1D) return toy1d_optimum(model);
  check_size(model);
  const std::size_t d = model.dim();
  Candidate best;
  const std::uint64_t total = std::uint64_t{1} << d;
  for (std::uint64_t code = 0; code < total; ++code) {
    best.offer(model.energy(decode(code, d)), code);
  }
  return {decode(best.code, d), best.energy};
}

Optimum brute_force_optimum(const EnergyModel& model) {
  if (model.kind() == ProblemKind::Toy1D) return toy1d_optimum(model);
  check_size(model);
  if (!model.has_graph()) return brute_force_optimum_serial(model);
  const std::size_t d = model.dim();
  const std::size_t low_bits = d < 12 ? d : 12;
  const std::int64_t blocks = std::int64_t{1} << (d - low_bits);
  const std::uint64_t block_size = std::uint64_t{1} << low_bits;

  Candidate best;
#pragma omp parallel
  {
    Candidate local;
    GrayWalker walker(model);
#pragma omp for schedule(static)
    for (std::int64_t block = 0; block < blocks; ++block) {
      const std::uint64_t high = static_cast<std::uint64_t>(block) << low_bits;
      walker.start(high);
      local.offer(walker.energy(), high);
      for (std::uint64_t k = 1; k < block_size; ++k) {
        walker.flip(static_cast<std::size_t>(std::countr_zero(k)));
        local.offer(walker.energy(), high | (k ^ (k >> 1)));
      }
    }
#pragma omp critical
    best.offer(local.energy, local.code);
  }
  return {decode(best.code, d), best.energy};
}

}  // namespace resco
