#ifndef BWK_RESTART_H_
#define BWK_RESTART_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "bwk/env.h"
#include "bwk/lagrange.h"

namespace bwk {

struct RestartConfig {
  LagrangeConfig base;
  int restart_length = 1;  // T_res, in [1, T]
  std::optional<double> variation_estimate;
};

// clamp(round(constant * (rho T / E)^(2/3)), 1, T); E = 0 gives T.
int ChooseRestartLength(double rho, int T, double variation,
                        double constant = 1.0);

struct BatchSummary {
  int batch = 0;  // 1-based
  int start_t = 0;
  int length = 0;
  double budget = 0.0;
  double reward = 0.0;
  double consumed_max = 0.0;
};

struct RestartRunResult {
  // stopping_round is the last round played in any batch.
  BwkRunResult run;
  std::vector<BatchSummary> batches;
  // Set when T_res < 1/rho; such batches get (almost) no budget.
  bool restart_length_below_inverse_rho = false;
};

// Splits [T] into ceil(T / T_res) batches and runs a fresh Lagrangian player
// on each with budget max(floor(rho |T_j|) - 1, 0).
RestartRunResult RunAlgorithm2(EnvironmentTrace& trace,
                               const RestartConfig& config,
                               std::uint64_t seed);

// Same, with explicit learner seeds per batch (one per batch).
RestartRunResult RunAlgorithm2(EnvironmentTrace& trace,
                               const RestartConfig& config,
                               std::uint64_t seed,
                               std::span<const std::uint64_t> batch_seeds);

double BatchBudget(double rho, int length);

// Batch summary CSV: `batch,start_t,len,budget,rew,consumed_max`.
void WriteBatchCsv(std::span<const BatchSummary> batches, std::ostream& out);

}  // namespace bwk

#endif  // BWK_RESTART_H_
