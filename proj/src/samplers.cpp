#include "resco/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "resco/error.hpp"

namespace resco {

const char* to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::RandomWalk: return "rw";
    case SamplerKind::DMALA: return "dmala";
    case SamplerKind::PathAux: return "pas";
  }
  return "?";
}

SamplerKind sampler_from_name(const std::string& name) {
  if (name == "rw" || name == "random-walk") return SamplerKind::RandomWalk;
  if (name == "dmala") return SamplerKind::DMALA;
  if (name == "pas" || name == "path-aux") return SamplerKind::PathAux;
  throw Error(ErrorKind::Parameter, "unknown sampler '" + name + "'");
}

const char* to_string(Balancing g) { return g == Balancing::Sqrt ? "sqrt" : "ratio"; }

Balancing balancing_from_name(const std::string& name) {
  if (name == "sqrt") return Balancing::Sqrt;
  if (name == "ratio") return Balancing::Ratio;
  throw Error(ErrorKind::Parameter, "unknown balancing function '" + name + "'");
}

const char* to_string(FlipScore s) { return s == FlipScore::Exact ? "exact" : "gradient"; }

FlipScore flip_score_from_name(const std::string& name) {
  if (name == "exact") return FlipScore::Exact;
  if (name == "gradient") return FlipScore::Gradient;
  throw Error(ErrorKind::Parameter, "unknown flip score '" + name + "'");
}

void SamplerConfig::validate() const {
  require(alpha > 0.0, ErrorKind::Parameter, "DMALA stepsize alpha must be positive");
  require(path_length >= 1, ErrorKind::Parameter, "path length must be at least 1");
  if (stepsize_override) {
    require(*stepsize_override > 0.0, ErrorKind::Parameter,
            "stepsize override must be positive");
  }
}

namespace {

void check_temperature(double t) {
  require(t > 0.0, ErrorKind::Parameter, "temperature must be positive");
}

void check_binary(const EnergyModel& model, const State& x) {
  if (!model.is_binary()) {
    throw Error(ErrorKind::Unsupported,
                std::string("binary samplers cannot run on ") + to_string(model.kind()));
  }
  require(x.size() == model.dim(), ErrorKind::Contract, "state dimension mismatch");
}

// log(1 + e^z) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

std::size_t sample_categorical(std::span<const double> log_probs, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < log_probs.size(); ++i) {
    const double p = std::exp(log_probs[i]);
    if (p > 0.0) last_positive = i;
    cumulative += p;
    if (u < cumulative) return i;
  }
  return last_positive;
}

StepOutcome finish(const State& x, State proposal, double current_energy,
                   double proposal_energy, bool accepted) {
  StepOutcome out;
  out.accepted = accepted;
  if (accepted) {
    out.proposal_distance = hamming_distance(x, proposal);
    out.state = std::move(proposal);
    out.energy = proposal_energy;
  } else {
    out.state = x;
    out.energy = current_energy;
  }
  return out;
}

}  // namespace

double log_sum_exp(std::span<const double> values) {
  double peak = -std::numeric_limits<double>::infinity();
  for (double v : values) peak = std::max(peak, v);
  if (!std::isfinite(peak)) return peak;
  double total = 0.0;
  for (double v : values) total += std::exp(v - peak);
  return peak + std::log(total);
}

double acceptance_probability(double delta_f, double temperature) {
  check_temperature(temperature);
  if (delta_f <= 0.0) return 1.0;
  return std::exp(-delta_f / temperature);
}

bool metropolis_accept(double delta_f, double temperature, double u) {
  return u < acceptance_probability(delta_f, temperature);
}

double log_balance(Balancing g, double log_ratio) {
  switch (g) {
    case Balancing::Sqrt: return 0.5 * log_ratio;
    case Balancing::Ratio: return -softplus(-log_ratio);
  }
  return 0.0;
}

StepOutcome random_walk_step(const EnergyModel& model, const State& x, double temperature,
                             Rng& rng) {
  check_binary(model, x);
  check_temperature(temperature);
  const double current = model.energy(x);
  const std::size_t i = rng.below(model.dim());
  const double u = rng.uniform();
  const double delta = model.flip_delta(x, i);
  const bool accepted = metropolis_accept(delta, temperature, u);
  if (!accepted) return finish(x, {}, current, current, false);
  State proposal = x;
  proposal[i] ^= 1U;
  const double proposed = model.energy(proposal);
  return finish(x, std::move(proposal), current, proposed, true);
}

std::pair<double, double> dmala_log_flip(double grad_i, std::uint8_t x_i, double temperature,
                                         double alpha) {
  const double dir = 1.0 - 2.0 * x_i;
  const double score = -0.5 * grad_i * dir / temperature - 1.0 / (2.0 * alpha);
  return {-softplus(-score), -softplus(score)};
}

StepOutcome dmala_step(const EnergyModel& model, const State& x, double temperature,
                       double alpha, Rng& rng) {
  check_binary(model, x);
  check_temperature(temperature);
  require(alpha > 0.0, ErrorKind::Parameter, "DMALA stepsize alpha must be positive");
  const std::size_t d = model.dim();
  const double current = model.energy(x);

  std::vector<double> grad(d);
  model.gradient_into(x, grad);
  State proposal = x;
  double log_forward = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const auto [log_flip, log_stay] = dmala_log_flip(grad[i], x[i], temperature, alpha);
    if (rng.uniform() < std::exp(log_flip)) {
      proposal[i] ^= 1U;
      log_forward += log_flip;
    } else {
      log_forward += log_stay;
    }
  }
  const double u = rng.uniform();

  const double proposed = model.energy(proposal);
  model.gradient_into(proposal, grad);
  double log_reverse = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const auto [log_flip, log_stay] =
        dmala_log_flip(grad[i], proposal[i], temperature, alpha);
    log_reverse += proposal[i] != x[i] ? log_flip : log_stay;
  }
  const double log_ratio = -(proposed - current) / temperature + log_reverse - log_forward;
  const bool accepted = u < std::exp(std::min(0.0, log_ratio));
  return finish(x, std::move(proposal), current, proposed, accepted);
}

std::vector<double> pas_log_flip_probs(const EnergyModel& model, const State& x,
                                       double temperature, Balancing g, FlipScore score) {
  const std::size_t d = model.dim();
  std::vector<double> logits(d);
  if (score == FlipScore::Exact) {
    model.flip_deltas_into(x, logits);
    for (auto& v : logits) v = log_balance(g, -v / temperature);
  } else {
    model.gradient_into(x, logits);
    for (std::size_t i = 0; i < d; ++i) {
      const double dir = 1.0 - 2.0 * x[i];
      logits[i] = log_balance(g, -logits[i] * dir / temperature);
    }
  }
  const double norm = log_sum_exp(logits);
  for (auto& v : logits) v -= norm;
  return logits;
}

StepOutcome pas_step(const EnergyModel& model, const State& x, double temperature,
                     int path_length, Balancing g, Rng& rng, FlipScore score) {
  check_binary(model, x);
  check_temperature(temperature);
  require(path_length >= 1, ErrorKind::Parameter, "path length must be at least 1");
  const double current = model.energy(x);

  State y = x;
  std::vector<std::size_t> path(static_cast<std::size_t>(path_length));
  double log_forward = 0.0;
  for (auto& coord : path) {
    const auto log_probs = pas_log_flip_probs(model, y, temperature, g, score);
    coord = sample_categorical(log_probs, rng.uniform());
    log_forward += log_probs[coord];
    y[coord] ^= 1U;
  }
  const double u = rng.uniform();

  State z = y;
  double log_reverse = 0.0;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    const auto log_probs = pas_log_flip_probs(model, z, temperature, g, score);
    log_reverse += log_probs[*it];
    z[*it] ^= 1U;
  }

  const double proposed = model.energy(y);
  const double log_ratio = -(proposed - current) / temperature + log_reverse - log_forward;
  const bool accepted = u < std::exp(std::min(0.0, log_ratio));
  return finish(x, std::move(y), current, proposed, accepted);
}

StepOutcome sample_step(const EnergyModel& model, const SamplerConfig& config,
                        const State& x, double temperature, double alpha, Rng& rng) {
  switch (config.kind) {
    case SamplerKind::RandomWalk: return random_walk_step(model, x, temperature, rng);
    case SamplerKind::DMALA: return dmala_step(model, x, temperature, alpha, rng);
    case SamplerKind::PathAux:
      return pas_step(model, x, temperature, config.path_length, config.balancing, rng,
                      config.flip_score);
  }
  throw Error(ErrorKind::Parameter, "unknown sampler kind");
}

}  // namespace resco
