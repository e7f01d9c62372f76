#include "bwk/lagrange.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "bwk/csv.h"
#include "bwk/errors.h"
#include "bwk/rng.h"

namespace bwk {
namespace {

constexpr double kRangeSlack = 1e-12;

void CheckDimsMatch(const ProblemDims& a, const ProblemDims& b) {
  if (a.T != b.T || a.K != b.K || a.d != b.d || a.B != b.B) {
    throw ConfigError("configuration dims do not match the trace");
  }
}

}  // namespace

double LagrangianValue(double reward, std::span<const double> consumption,
                       int index, double rho) {
  if (index < 0 || index > static_cast<int>(consumption.size())) {
    throw std::out_of_range("Lagrangian index " + std::to_string(index) +
                            " out of range");
  }
  if (index == 0) return reward;
  return reward + (rho - consumption[index - 1]) / rho;
}

double ScaleLagrangianToUnit(double value, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw ValidationError("rho must lie in (0, 1]");
  }
  const double low = 1.0 - 1.0 / rho;
  const double width = 1.0 + 1.0 / rho;
  if (!(value >= low - kRangeSlack * width &&
        value <= 2.0 + kRangeSlack * width)) {
    throw ValidationError("Lagrangian value " + FormatDouble(value) +
                          " outside [1 - 1/rho, 2]");
  }
  return std::clamp((value - low) / width, 0.0, 1.0);
}

std::uint64_t BatchLearnerSeed(std::uint64_t seed, int batch) {
  return SplitSeed(SplitSeed(seed, kLearnerStream),
                   static_cast<std::uint64_t>(batch));
}

BwkRunResult RunSegment(EnvironmentTrace& trace, History& history,
                        int first_round, int length, double budget,
                        const LagrangeConfig& config, std::uint64_t seed,
                        std::uint64_t learner_seed) {
  const ProblemDims& dims = trace.dims();
  const int K = dims.K;
  const int d = dims.d;
  if (first_round < 1 || length < 0 || first_round + length - 1 > dims.T) {
    throw std::out_of_range("segment outside the horizon");
  }
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }

  BwkRunResult result;
  result.stopping_round = first_round - 1;
  result.consumed.assign(static_cast<std::size_t>(d), 0.0);
  if (length == 0 || !(budget > 0.0)) return result;

  const double rho = budget / static_cast<double>(length);
  if (!(rho <= 1.0)) throw ConfigError("per-round budget exceeds 1");
  const bool full_info = config.feedback == Feedback::kFullInformation;
  const double sub_delta = config.delta / 3.0;

  std::optional<Exp3P> maximizer;
  std::optional<Hedge> action_hedge;
  if (full_info) {
    action_hedge.emplace(K, config.tuning.action_hedge_eta.value_or(
                                Hedge::TunedEta(K, length)));
  } else {
    maximizer.emplace(K, config.tuning.exp3p.value_or(
                             Exp3P::Tuned(K, length, sub_delta)));
  }
  Hedge minimizer(d + 1, config.tuning.hedge_eta.value_or(
                             Hedge::TunedEta(d + 1, length)));

  std::mt19937_64 rng(learner_seed);
  const std::uint64_t env_seed = SplitSeed(seed, kEnvironmentStream);

  std::vector<double> consumption(d), other_consumption(d);
  std::vector<double> losses(d + 1), action_losses(K);
  if (config.keep_log) result.log.reserve(static_cast<std::size_t>(length));

  for (int t = first_round; t < first_round + length; ++t) {
    int action = 0;
    double probability = 1.0;
    if (full_info) {
      action = action_hedge->Sample(rng);
    } else {
      const Exp3P::Draw draw = maximizer->Sample(rng);
      action = draw.arm;
      probability = draw.probability;
    }
    const int index = minimizer.Sample(rng);

    double reward = 0.0;
    RealizeRound(trace, history, t, action, env_seed, reward, consumption);

    bool overdraw = false;
    for (int i = 0; i < d; ++i) {
      if (result.consumed[i] + consumption[i] > budget) overdraw = true;
    }
    if (overdraw) break;

    double cmax = 0.0;
    for (int i = 0; i < d; ++i) {
      result.consumed[i] += consumption[i];
      cmax = std::max(cmax, consumption[i]);
    }
    result.total_reward += reward;
    result.stopping_round = t;
    history.Append({t, action, reward, consumption});

    const double lagrangian = LagrangianValue(reward, consumption, index, rho);
    if (full_info) {
      for (int a = 0; a < K; ++a) {
        double r = 0.0;
        RealizeRound(trace, history, t, a, env_seed, r, other_consumption);
        action_losses[a] = 1.0 - ScaleLagrangianToUnit(
                                     LagrangianValue(r, other_consumption,
                                                     index, rho),
                                     rho);
      }
      action_hedge->Update(action_losses);
    } else {
      maximizer->Update(action, ScaleLagrangianToUnit(lagrangian, rho),
                        probability);
    }
    for (int i = 0; i <= d; ++i) {
      losses[i] = ScaleLagrangianToUnit(
          LagrangianValue(reward, consumption, i, rho), rho);
    }
    minimizer.Update(losses);

    if (config.keep_log) {
      result.log.push_back({t, action, index, reward, cmax, lagrangian});
    }
  }
  return result;
}

BwkRunResult RunAlgorithm1(EnvironmentTrace& trace,
                           const LagrangeConfig& config,
                           std::optional<double> budget_override,
                           std::uint64_t seed) {
  const ProblemDims& dims = trace.dims();
  CheckDimsMatch(config.dims, dims);
  if (!std::isfinite(dims.rho()) || dims.rho() < 0.0) {
    throw ConfigError("rho must be finite and non-negative");
  }
  double budget = dims.B;
  if (budget_override) {
    if (*budget_override > dims.B || !(*budget_override >= 0.0)) {
      throw ConfigError("budget override must lie in [0, B]");
    }
    budget = *budget_override;
  }
  History history;
  BwkRunResult result = RunSegment(trace, history, 1, dims.T, budget, config,
                                   seed, BatchLearnerSeed(seed, 0));
  result.history = std::move(history);
  return result;
}

void WriteDiagnosticCsv(std::span<const DiagnosticEntry> log,
                        std::ostream& out) {
  out << "t,A_t,I_t,R,Cmax,L\n";
  for (const DiagnosticEntry& e : log) {
    out << e.t << ',' << e.action << ',' << e.index << ','
        << FormatDouble(e.reward) << ',' << FormatDouble(e.max_consumption)
        << ',' << FormatDouble(e.lagrangian) << '\n';
  }
}

}  // namespace bwk
