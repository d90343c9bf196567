#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "kernel_oracle.hpp"
#include "resco/error.hpp"
#include "resco/samplers.hpp"

using namespace resco;

namespace {

EnergyModel small_mis() { return EnergyModel::mis(Graph(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}})); }

using Kernel = std::function<StepOutcome(const EnergyModel&, const State&, Rng&)>;

std::vector<double> empirical_row(const EnergyModel& m, const State& x, const Kernel& k,
                                  std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> freq(std::size_t(1) << m.dim(), 0.0);
  for (std::size_t s = 0; s < samples; ++s) freq[oracle::encode(k(m, x, rng).state)] += 1.0;
  for (auto& f : freq) f /= double(samples);
  return freq;
}

void expect_stochastic_and_reversible(const oracle::Matrix& P, const std::vector<double>& pi) {
  for (std::size_t i = 0; i < P.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < P.size(); ++j) {
      row += P[i][j];
      EXPECT_NEAR(pi[i] * P[i][j], pi[j] * P[j][i], 1e-12);
    }
    EXPECT_NEAR(row, 1.0, 1e-12);
  }
}

void expect_rows_match(const EnergyModel& m, const oracle::Matrix& P, const Kernel& k) {
  const std::size_t n = P.size();
  for (std::size_t c = 0; c < n; ++c) {
    const auto row = empirical_row(m, oracle::decode(c, m.dim()), k, 40000, 100 + c);
    EXPECT_LT(oracle::total_variation(row, P[c]), 0.015) << "start state " << c;
  }
}

}  // namespace

TEST(Metropolis, Examples) {
  EXPECT_TRUE(metropolis_accept(0.0, 0.3, 0.999999));
  EXPECT_DOUBLE_EQ(acceptance_probability(0.7 * std::log(2.0), 0.7), 0.5);
  EXPECT_DOUBLE_EQ(acceptance_probability(-5.0, 0.1), 1.0);
  EXPECT_TRUE(metropolis_accept(-1e-9, 1.0, std::nextafter(1.0, 0.0)));
  Rng rng(1);
  std::size_t accepted = 0;
  for (int i = 0; i < 1000000; ++i) accepted += metropolis_accept(10.0, 0.01, rng.uniform());
  EXPECT_EQ(accepted, 0u);
  EXPECT_THROW(acceptance_probability(1.0, 0.0), Error);
  EXPECT_THROW(acceptance_probability(1.0, -1.0), Error);
}

TEST(Metropolis, BalanceFunctions) {
  EXPECT_DOUBLE_EQ(log_balance(Balancing::Sqrt, 2.0), 1.0);
  EXPECT_NEAR(std::exp(log_balance(Balancing::Ratio, std::log(3.0))), 0.75, 1e-15);
  EXPECT_NEAR(log_balance(Balancing::Ratio, -800.0), -800.0, 1e-9);
  const std::vector<double> v{std::log(1.0), std::log(3.0)};
  EXPECT_NEAR(log_sum_exp(v), std::log(4.0), 1e-15);
}

TEST(RandomWalk, StaysAtGlobalMinimumWhenCold) {
  const auto m = EnergyModel::toy2d();
  Rng rng(2);
  State x{1, 1};
  std::size_t stays = 0;
  for (int i = 0; i < 10000; ++i) {
    x = random_walk_step(m, x, 1e-9, rng).state;
    stays += x == State{1, 1};
  }
  EXPECT_GE(stays, 9990u);
}

TEST(RandomWalk, DownhillAlwaysAccepted) {
  const auto m = EnergyModel::toy2d();
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto out = random_walk_step(m, State{1, 0}, 1e-6, rng);
    EXPECT_TRUE(out.accepted);
    EXPECT_EQ(out.proposal_distance, 1u);
  }
}

TEST(RandomWalk, ChiSquareAgainstExactKernel) {
  // One-step draws from (0,0) at T = 1 are independent, so Pearson's test applies.
  const auto m = EnergyModel::toy2d();
  const auto P = oracle::random_walk(m, 1.0);
  const std::size_t samples = 200000;
  const auto row = empirical_row(m, State{0, 0}, [](const EnergyModel& mm, const State& x, Rng& r) {
    return random_walk_step(mm, x, 1.0, r);
  }, samples, 5);
  double chi2 = 0.0;
  std::size_t bins = 0;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (P[0][k] == 0.0) {
      EXPECT_EQ(row[k], 0.0);
      continue;
    }
    const double expected = P[0][k] * samples;
    chi2 += std::pow(row[k] * samples - expected, 2) / expected;
    ++bins;
  }
  ASSERT_EQ(bins, 3u);
  EXPECT_LT(chi2, 9.210);  // chi-square(2) at 0.01
}

TEST(Kernels, OracleMatricesAreReversible) {
  for (const auto& m : {EnergyModel::toy2d(), small_mis()}) {
    for (double T : {1.0, 0.3}) {
      const auto pi = oracle::boltzmann(m, T);
      expect_stochastic_and_reversible(oracle::random_walk(m, T), pi);
      expect_stochastic_and_reversible(oracle::dmala(m, T, 0.2), pi);
      expect_stochastic_and_reversible(oracle::pas(m, T, 1, true, true), pi);
      expect_stochastic_and_reversible(oracle::pas(m, T, 3, true, true), pi);
      expect_stochastic_and_reversible(oracle::pas(m, T, 2, false, false), pi);
    }
  }
}

TEST(Kernels, RandomWalkRowsMatchOracle) {
  for (const auto& m : {EnergyModel::toy2d(), small_mis()}) {
    expect_rows_match(m, oracle::random_walk(m, 1.0),
                      [](const EnergyModel& mm, const State& x, Rng& r) {
                        return random_walk_step(mm, x, 1.0, r);
                      });
  }
}

TEST(Kernels, DmalaRowsMatchOracle) {
  for (double alpha : {0.2, 1.0}) {
    for (const auto& m : {EnergyModel::toy2d(), small_mis()}) {
      expect_rows_match(m, oracle::dmala(m, 0.5, alpha),
                        [alpha](const EnergyModel& mm, const State& x, Rng& r) {
                          return dmala_step(mm, x, 0.5, alpha, r);
                        });
    }
  }
}

TEST(Kernels, PathAuxRowsMatchOracle) {
  struct Case {
    int R;
    Balancing g;
    FlipScore s;
  };
  for (const Case c : {Case{1, Balancing::Sqrt, FlipScore::Exact},
                       Case{3, Balancing::Sqrt, FlipScore::Exact},
                       Case{2, Balancing::Ratio, FlipScore::Gradient}}) {
    for (const auto& m : {EnergyModel::toy2d(), small_mis()}) {
      expect_rows_match(m,
                        oracle::pas(m, 1.0, c.R, c.g == Balancing::Sqrt, c.s == FlipScore::Exact),
                        [c](const EnergyModel& mm, const State& x, Rng& r) {
                          return pas_step(mm, x, 1.0, c.R, c.g, r, c.s);
                        });
    }
  }
}

TEST(Dmala, FlipProbabilities) {
  const auto [lf, ls] = dmala_log_flip(0.0, 0, 1.0, 1e12);
  EXPECT_NEAR(std::exp(lf), 0.5, 1e-9);
  EXPECT_NEAR(std::exp(ls), 0.5, 1e-9);
  const auto [lf2, ls2] = dmala_log_flip(-3.0, 0, 0.5, 0.2);
  EXPECT_NEAR(std::exp(lf2), oracle::sigmoid(3.0 - 2.5), 1e-12);
  EXPECT_NEAR(std::exp(lf2) + std::exp(ls2), 1.0, 1e-12);
  const auto [lf3, ls3] = dmala_log_flip(1e6, 0, 1e-3, 0.2);
  EXPECT_TRUE(std::isfinite(lf3));
  EXPECT_NEAR(ls3, 0.0, 1e-12);
}

TEST(PathAux, FlipDistribution) {
  const auto flat = EnergyModel::max_cut(Graph(5, {}));
  for (double lp : pas_log_flip_probs(flat, State(5, 0), 1.0, Balancing::Sqrt, FlipScore::Exact)) {
    EXPECT_NEAR(std::exp(lp), 0.2, 1e-15);
  }
  const auto m = small_mis();
  const State x{1, 0, 1, 1};
  for (bool exact : {true, false}) {
    for (bool sq : {true, false}) {
      const auto lib = pas_log_flip_probs(m, x, 0.7, sq ? Balancing::Sqrt : Balancing::Ratio,
                                          exact ? FlipScore::Exact : FlipScore::Gradient);
      const auto ref = oracle::pas_weights(m, x, 0.7, sq, exact);
      for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(std::exp(lib[i]), ref[i], 1e-12);
    }
  }
}

TEST(Samplers, Deterministic) {
  const auto m = EnergyModel::mis(gen_er(20, 0.2, 1));
  SamplerConfig cfg;
  for (auto kind : {SamplerKind::RandomWalk, SamplerKind::DMALA, SamplerKind::PathAux}) {
    cfg.kind = kind;
    Rng a(9), b(9);
    State xa(20, 0), xb(20, 0);
    for (int t = 0; t < 200; ++t) {
      const auto oa = sample_step(m, cfg, xa, 0.5, a);
      const auto ob = sample_step(m, cfg, xb, 0.5, b);
      ASSERT_EQ(oa.state, ob.state);
      ASSERT_EQ(oa.energy, ob.energy);
      ASSERT_EQ(oa.energy, m.energy(oa.state));
      xa = oa.state;
      xb = ob.state;
    }
  }
}

TEST(Samplers, Validation) {
  const auto m = EnergyModel::toy2d();
  Rng rng(1);
  EXPECT_THROW(dmala_step(m, State{0, 0}, 0.0, 0.2, rng), Error);
  EXPECT_THROW(dmala_step(m, State{0, 0}, 1.0, 0.0, rng), Error);
  EXPECT_THROW(pas_step(m, State{0, 0}, 1.0, 0, Balancing::Sqrt, rng), Error);
  EXPECT_THROW(random_walk_step(m, State{0, 0, 0}, 1.0, rng), Error);
  try {
    random_walk_step(EnergyModel::toy1d(), State{3}, 1.0, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
  SamplerConfig cfg;
  cfg.alpha = -1;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = {};
  cfg.stepsize_override = 0.0;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_EQ(sampler_from_name("dmala"), SamplerKind::DMALA);
  EXPECT_THROW(sampler_from_name("gibbs"), Error);
}
