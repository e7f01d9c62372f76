#include "bwk/learners.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "bwk/errors.h"

namespace bwk {
namespace {

TEST(Hedge, DistributionExamples) {
  EXPECT_EQ(Hedge(3, 0.1).Distribution(),
            (std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}));
  const std::vector<double> w = {2.0, 1.0, 1.0};
  const auto p = Hedge::FromWeights(w, 0.1).Distribution();
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  EXPECT_DOUBLE_EQ(p[1], 0.25);
  EXPECT_DOUBLE_EQ(p[2], 0.25);
}

TEST(Hedge, UpdateExamples) {
  Hedge h(2, std::log(2.0));
  h.Update(std::vector<double>{1.0, 0.0});
  const auto p = h.Distribution();
  EXPECT_NEAR(p[0], 1.0 / 3, 1e-15);
  EXPECT_NEAR(p[1], 2.0 / 3, 1e-15);

  Hedge g(2, 1.0);
  g.Update(std::vector<double>{0.0, 1.0});
  const auto w = g.Weights();
  EXPECT_NEAR(w[0] / w[1], std::exp(1.0), 1e-12);

  const std::vector<double> start = {0.2, 0.3, 0.5};
  Hedge e = Hedge::FromWeights(start, 0.7);
  const auto before = e.Distribution();
  e.Update(std::vector<double>{0.4, 0.4, 0.4});
  const auto after = e.Distribution();
  for (int a = 0; a < 3; ++a) EXPECT_NEAR(after[a], before[a], 1e-15);
}

TEST(Hedge, RejectsLossesOutsideUnitInterval) {
  Hedge h(2, 0.1);
  EXPECT_THROW(h.Update(std::vector<double>{1.5, 0.0}), ValidationError);
  EXPECT_THROW(h.Update(std::vector<double>{-0.1, 0.0}), ValidationError);
  EXPECT_THROW(h.Update(std::vector<double>{0.1}), ValidationError);
}

TEST(Hedge, ScaleInvariantDistribution) {
  const std::vector<double> w = {0.3, 1.7, 0.9, 2.2};
  std::vector<double> scaled = w;
  for (double& x : scaled) x *= 1024.0;
  EXPECT_EQ(Hedge::FromWeights(w, 0.2).Distribution(),
            Hedge::FromWeights(scaled, 0.2).Distribution());
  std::vector<double> odd = w;
  for (double& x : odd) x *= 3.7;
  const auto p = Hedge::FromWeights(w, 0.2).Distribution();
  const auto q = Hedge::FromWeights(odd, 0.2).Distribution();
  for (int a = 0; a < 4; ++a) EXPECT_NEAR(p[a], q[a], 1e-15);
  EXPECT_EQ(std::max_element(p.begin(), p.end()) - p.begin(),
            std::max_element(q.begin(), q.end()) - q.begin());
}

double HedgeRegret(Hedge& h, const std::vector<std::vector<double>>& losses) {
  const int n = h.size();
  double player = 0.0;
  std::vector<double> totals(n, 0.0);
  for (const auto& l : losses) {
    const auto p = h.Distribution();
    for (int a = 0; a < n; ++a) {
      player += p[a] * l[a];
      totals[a] += l[a];
    }
    h.Update(l);
  }
  return player - *std::min_element(totals.begin(), totals.end());
}

TEST(Hedge, RegretOnUniformLosses) {
  const int T = 1000, n = 5;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> losses(T, std::vector<double>(n));
  for (auto& l : losses) {
    for (double& x : l) x = u(rng);
  }
  Hedge h(n, Hedge::TunedEta(n, T));
  EXPECT_LE(HedgeRegret(h, losses),
            std::sqrt(T / 2.0 * std::log(n)) + 3.0 * std::sqrt(T));
}

TEST(Hedge, RegretBoundOnAdversarialSequences) {
  const int T = 2000;
  for (int n : {2, 3, 7}) {
    const double eta = Hedge::TunedEta(n, T);
    const double bound = std::log(n) / eta + eta * T / 8.0;
    // Switching leader: the best expert changes every 50 rounds.
    std::vector<std::vector<double>> losses(T, std::vector<double>(n, 1.0));
    for (int t = 0; t < T; ++t) losses[t][(t / 50) % n] = 0.0;
    Hedge h1(n, eta);
    EXPECT_LE(HedgeRegret(h1, losses), bound) << "n = " << n;
    // Follow-the-leader trap.
    std::vector<std::vector<double>> trap(T, std::vector<double>(n, 0.5));
    for (int t = 0; t < T; ++t) {
      trap[t][0] = t % 2 == 0 ? 0.0 : 1.0;
      trap[t][1] = t % 2 == 0 ? 1.0 : 0.0;
    }
    Hedge h2(n, eta);
    EXPECT_LE(HedgeRegret(h2, trap), bound) << "n = " << n;
  }
}

TEST(Hedge, LongHorizonKeepsWeightsFinite) {
  Hedge h(3, 5.0);
  for (int t = 0; t < 100000; ++t) h.Update(std::vector<double>{1.0, 0.0, 0.5});
  for (double w : h.Weights()) {
    EXPECT_TRUE(std::isfinite(w));
    EXPECT_GE(w, 0.0);
  }
  EXPECT_EQ(h.Distribution()[1], 1.0);
}

TEST(Exp3P, ProbabilityExamples) {
  const auto uniform = Exp3P(4, {1.0, 0.1, 0.0}).Probabilities();
  for (double p : uniform) EXPECT_DOUBLE_EQ(p, 0.25);

  const std::vector<double> w = {1.0, 1e-300};
  const auto p = Exp3P::FromWeights(w, {0.2, 0.1, 0.0}).Probabilities();
  EXPECT_NEAR(p[0], 0.9, 1e-12);
  EXPECT_NEAR(p[1], 0.1, 1e-12);
}

TEST(Exp3P, SampleFrequenciesMatchProbabilities) {
  const std::vector<double> w = {1.0, 3.0, 6.0};
  const Exp3P learner = Exp3P::FromWeights(w, {0.3, 0.1, 0.0});
  const auto p = learner.Probabilities();
  std::mt19937_64 rng(5);
  std::vector<int> counts(3, 0);
  const int n = 100000;
  for (int s = 0; s < n; ++s) {
    const Exp3P::Draw d = learner.Sample(rng);
    EXPECT_EQ(d.probability, p[d.arm]);
    ++counts[d.arm];
  }
  for (int a = 0; a < 3; ++a) {
    EXPECT_NEAR(static_cast<double>(counts[a]) / n, p[a], 0.01);
  }
}

TEST(Exp3P, UpdateExamples) {
  Exp3P zero(2, {0.5, 0.1, 0.0});
  zero.Update(0, 0.0, 0.5);
  EXPECT_EQ(zero.Weights(), (std::vector<double>{1.0, 1.0}));

  Exp3P one(2, {0.5, 0.1, 0.0});
  one.Update(0, 1.0, 0.5);
  const auto w = one.Weights();
  EXPECT_NEAR(w[0] / w[1], std::exp(0.2), 1e-12);

  // Unchosen arms still receive the optimism term beta / p_a.
  Exp3P opt(2, {1.0, 0.1, 0.3});
  opt.Update(0, 0.0, 0.5);
  EXPECT_EQ(opt.Weights(), (std::vector<double>{1.0, 1.0}));
  opt.Update(0, 1.0, 0.5);
  const auto v = opt.Weights();
  EXPECT_NEAR(v[0] / v[1], std::exp(0.1 * 2.0), 1e-12);
}

TEST(Exp3P, RejectsBadInputs) {
  Exp3P learner(2, {0.5, 0.1, 0.0});
  EXPECT_THROW(learner.Update(0, 1.5, 0.5), ValidationError);
  EXPECT_THROW(learner.Update(0, -0.5, 0.5), ValidationError);
  EXPECT_THROW(Exp3P(2, {0.0, 0.1, 0.0}), ValidationError);
  EXPECT_THROW(Exp3P(2, {1.5, 0.1, 0.0}), ValidationError);
}

TEST(Exp3P, TunedParameters) {
  const Exp3PParams p = Exp3P::Tuned(3, 50000, 0.05);
  EXPECT_NEAR(p.gamma, 1.05 * std::sqrt(3 * std::log(3.0) / 50000), 1e-15);
  EXPECT_NEAR(p.eta, 0.95 * std::sqrt(std::log(3.0) / (3 * 50000.0)), 1e-15);
  EXPECT_NEAR(p.beta, std::sqrt(std::log(3 / 0.05) / (3 * 50000.0)), 1e-15);
  EXPECT_EQ(Exp3P::Tuned(3, 3, 0.05).gamma, 1.0);
}

TEST(Exp3P, ProbabilityFloorAndFiniteWeights) {
  const int k = 4, T = 20000;
  Exp3P learner(k, Exp3P::Tuned(k, T, 0.05));
  const double floor = learner.params().gamma / k;
  std::mt19937_64 rng(9);
  for (int t = 0; t < T; ++t) {
    const auto p = learner.Probabilities();
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-9);
    for (double x : p) ASSERT_GE(x, floor * (1.0 - 1e-12));
    const Exp3P::Draw d = learner.Sample(rng);
    learner.Update(d.arm, d.arm == 2 ? 1.0 : 0.0, d.probability);
  }
  for (double w : learner.Weights()) {
    EXPECT_TRUE(std::isfinite(w));
    EXPECT_GT(w, 0.0);
  }
}

TEST(Exp3P, TwoArmRegretWithinReportedBound) {
  const int T = 20000;
  const double means[2] = {0.6, 0.4};
  const RegretBudget budget{T, 0.05, 1.0, 1.0};
  const double bound = RegretBoundMax(budget, 2, 1.0);
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Exp3P learner(2, Exp3P::Tuned(2, T, 0.05));
    std::mt19937_64 rng(seed);
    std::mt19937_64 env(seed + 1000);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double gained = 0.0;
    for (int t = 0; t < T; ++t) {
      const Exp3P::Draw d = learner.Sample(rng);
      const double r = u(env) < means[d.arm] ? 1.0 : 0.0;
      gained += r;
      learner.Update(d.arm, r, d.probability);
    }
    if (means[0] * T - gained <= bound) ++within;
  }
  EXPECT_GE(within, 19);
}

TEST(Learners, DeterministicGivenSeed) {
  auto run = [](std::uint64_t seed) {
    Exp3P learner(3, Exp3P::Tuned(3, 500, 0.05));
    std::mt19937_64 rng(seed);
    std::vector<int> arms;
    for (int t = 0; t < 500; ++t) {
      const Exp3P::Draw d = learner.Sample(rng);
      arms.push_back(d.arm);
      learner.Update(d.arm, d.arm == 1 ? 0.7 : 0.2, d.probability);
    }
    return std::make_pair(arms, learner.Weights());
  };
  EXPECT_EQ(run(3), run(3));
  EXPECT_NE(run(3).first, run(4).first);
}

TEST(RegretBounds, Formulas) {
  const RegretBudget b{10000, 0.05, 5.0, 1.0};
  EXPECT_NEAR(RegretBoundMax(b, 4, 0.25),
              4.0 * std::sqrt(4 * 10000.0 * std::log(10000 * 4 / 0.05)),
              1e-9);
  EXPECT_NEAR(RegretBoundMax(b, 4, 0.25, true),
              4.0 * std::sqrt(10000.0 * std::log(10000 * 4 / 0.05)), 1e-9);
  EXPECT_NEAR(RegretBoundMin(b, 2, 0.25),
              4.0 * std::sqrt(10000.0 * std::log(10000 * 2 / 0.05)), 1e-9);

  RegretBudget zero = b;
  zero.constant = 0.0;
  EXPECT_EQ(RegretBoundMax(zero, 4, 0.25), 0.0);
  EXPECT_EQ(RegretBoundMin(zero, 2, 0.25), 0.0);

  RegretBudget twice = b;
  twice.constant = 2.0;
  EXPECT_NEAR(RegretBoundMax(twice, 4, 0.25), 2 * RegretBoundMax(b, 4, 0.25),
              1e-9);
}

TEST(RegretBounds, ScalingInHorizonAndConfidence) {
  const RegretBudget b{10000, 0.05, 5.0, 1.0};
  RegretBudget longer = b;
  longer.T = 4 * b.T;
  // sqrt(T) scaling, up to the growth of the log factor.
  EXPECT_NEAR(RegretBoundMax(longer, 4, 0.25) / RegretBoundMax(b, 4, 0.25),
              2.0 * std::sqrt(std::log(40000 * 4 / 0.05) /
                              std::log(10000 * 4 / 0.05)),
              1e-12);
  RegretBudget surer = b;
  surer.delta = 0.01;
  EXPECT_GT(RegretBoundMax(surer, 4, 0.25), RegretBoundMax(b, 4, 0.25));
  EXPECT_GT(RegretBoundMin(surer, 1, 0.25), RegretBoundMin(b, 1, 0.25));
  for (int T = 10; T < 100000; T *= 3) {
    RegretBudget lo = b, hi = b;
    lo.T = T;
    hi.T = T + 1;
    EXPECT_LT(RegretBoundMax(lo, 3, 0.1), RegretBoundMax(hi, 3, 0.1));
    EXPECT_LT(RegretBoundMin(lo, 3, 0.1), RegretBoundMin(hi, 3, 0.1));
  }
}

TEST(RegretBounds, RejectsBadBudgets) {
  EXPECT_THROW((RegretBudget{100, 0.0, 2.0, 1.0}.Validate()), ValidationError);
  EXPECT_THROW((RegretBudget{100, 1.0, 2.0, 1.0}.Validate()), ValidationError);
  EXPECT_THROW((RegretBudget{100, 0.05, 0.5, 1.0}.Validate()),
               ValidationError);
}

}  // namespace
}  // namespace bwk
