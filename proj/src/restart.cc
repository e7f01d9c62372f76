#include "bwk/restart.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "bwk/csv.h"
#include "bwk/errors.h"

namespace bwk {

int ChooseRestartLength(double rho, int T, double variation,
                        double constant) {
  if (!(rho > 0.0) || T < 1 || !(variation >= 0.0) || !(constant > 0.0)) {
    throw ValidationError("need rho > 0, T >= 1, E >= 0, constant > 0");
  }
  if (variation == 0.0) return T;
  const double raw =
      constant * std::cbrt(std::pow(rho * static_cast<double>(T) / variation,
                                    2.0));
  if (!(raw < static_cast<double>(T))) return T;
  return std::clamp(static_cast<int>(std::llround(raw)), 1, T);
}

double BatchBudget(double rho, int length) {
  return std::max(std::floor(rho * static_cast<double>(length)) - 1.0, 0.0);
}

RestartRunResult RunAlgorithm2(EnvironmentTrace& trace,
                               const RestartConfig& config,
                               std::uint64_t seed) {
  const int T = trace.dims().T;
  const int t_res = config.restart_length;
  if (t_res < 1 || t_res > T) {
    throw ConfigError("restart length must lie in [1, T]");
  }
  const int batches = (T + t_res - 1) / t_res;
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(batches));
  for (int j = 0; j < batches; ++j) seeds[j] = BatchLearnerSeed(seed, j);
  return RunAlgorithm2(trace, config, seed, seeds);
}

RestartRunResult RunAlgorithm2(EnvironmentTrace& trace,
                               const RestartConfig& config,
                               std::uint64_t seed,
                               std::span<const std::uint64_t> batch_seeds) {
  const ProblemDims& dims = trace.dims();
  if (config.base.dims.T != dims.T || config.base.dims.K != dims.K ||
      config.base.dims.d != dims.d || config.base.dims.B != dims.B) {
    throw ConfigError("configuration dims do not match the trace");
  }
  const int T = dims.T;
  const int t_res = config.restart_length;
  if (t_res < 1 || t_res > T) {
    throw ConfigError("restart length must lie in [1, T]");
  }
  const int batches = (T + t_res - 1) / t_res;
  if (batch_seeds.size() != static_cast<std::size_t>(batches)) {
    throw ConfigError("need one learner seed per batch");
  }
  const double rho = dims.rho();

  RestartRunResult out;
  out.restart_length_below_inverse_rho =
      static_cast<double>(t_res) * rho < 1.0;
  out.run.consumed.assign(static_cast<std::size_t>(dims.d), 0.0);

  for (int j = 0; j < batches; ++j) {
    const int start = 1 + j * t_res;
    const int length = std::min(t_res, T - start + 1);
    const double budget = BatchBudget(rho, length);
    const BwkRunResult inner =
        RunSegment(trace, out.run.history, start, length, budget, config.base,
                   seed, batch_seeds[j]);

    BatchSummary summary{j + 1, start, length, budget, inner.total_reward, 0.0};
    for (int i = 0; i < dims.d; ++i) {
      out.run.consumed[i] += inner.consumed[i];
      summary.consumed_max = std::max(summary.consumed_max, inner.consumed[i]);
    }
    out.run.total_reward += inner.total_reward;
    if (!out.run.history.empty()) {
      out.run.stopping_round = out.run.history.back().t;
    }
    out.run.log.insert(out.run.log.end(), inner.log.begin(), inner.log.end());
    out.batches.push_back(summary);
  }
  return out;
}

void WriteBatchCsv(std::span<const BatchSummary> batches, std::ostream& out) {
  out << "batch,start_t,len,budget,rew,consumed_max\n";
  for (const BatchSummary& b : batches) {
    out << b.batch << ',' << b.start_t << ',' << b.length << ','
        << FormatDouble(b.budget) << ',' << FormatDouble(b.reward) << ','
        << FormatDouble(b.consumed_max) << '\n';
  }
}

}  // namespace bwk
