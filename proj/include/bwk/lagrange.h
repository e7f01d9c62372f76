#ifndef BWK_LAGRANGE_H_
#define BWK_LAGRANGE_H_

// Primal-dual BwK player. A maximizer over actions (EXP3.P, or Hedge with full
// information) and a minimizer over {no penalty} plus the d resources (Hedge)
// play the Lagrangian game
//
//   L_t(a, i) = R_t(a) + [i != 0] (rho - C_{t,i}(a)) / rho
//
// round by round until a resource would be overdrawn.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "bwk/env.h"
#include "bwk/learners.h"

namespace bwk {

enum class Feedback { kBandit, kFullInformation };

// Overrides for the learners' default fixed-horizon tuning.
struct LearnerTuning {
  std::optional<Exp3PParams> exp3p;
  std::optional<double> hedge_eta;         // minimizer
  std::optional<double> action_hedge_eta;  // maximizer in full-info mode
};

struct LagrangeConfig {
  ProblemDims dims;
  double delta = 0.05;
  Feedback feedback = Feedback::kBandit;
  LearnerTuning tuning;
  bool keep_log = true;  // per-round diagnostic log
};

struct DiagnosticEntry {
  int t = 0;
  int action = 0;  // A_t
  int index = 0;   // I_t, 0 = no penalty, i >= 1 = resource i
  double reward = 0.0;
  double max_consumption = 0.0;
  double lagrangian = 0.0;  // L_t(A_t, I_t)
};

struct BwkRunResult {
  History history;
  int stopping_round = 0;  // T_A
  double total_reward = 0.0;
  std::vector<double> consumed;  // per resource, through T_A
  std::vector<DiagnosticEntry> log;
};

// L_t(a, i) for realized payoffs; `index` 0 means no penalty.
double LagrangianValue(double reward, std::span<const double> consumption,
                       int index, double rho);

// Affine map of [1 - 1/rho, 2] onto [0, 1].
double ScaleLagrangianToUnit(double value, double rho);

// Runs the player over rounds 1..T of `trace` with budget B (or the
// override, which may not exceed B). Deterministic in (trace, config, seed).
// A round whose consumption would overdraw a resource is discarded and ends
// the run. A zero budget gives an empty run.
BwkRunResult RunAlgorithm1(EnvironmentTrace& trace,
                           const LagrangeConfig& config,
                           std::optional<double> budget_override,
                           std::uint64_t seed);

// One fresh instance of the player on rounds [first_round, first_round +
// length) with its own budget; per-round rate is budget / length. Played
// rounds are appended to `history`. Realizations come from
// SplitSeed(seed, kEnvironmentStream) where `seed` is the episode seed and the
// learners are seeded from `learner_seed`.
BwkRunResult RunSegment(EnvironmentTrace& trace, History& history,
                        int first_round, int length, double budget,
                        const LagrangeConfig& config, std::uint64_t seed,
                        std::uint64_t learner_seed);

// Learner seed of batch `batch` for an episode seed.
std::uint64_t BatchLearnerSeed(std::uint64_t seed, int batch);

// Diagnostic log CSV: `t,A_t,I_t,R,Cmax,L`.
void WriteDiagnosticCsv(std::span<const DiagnosticEntry> log,
                        std::ostream& out);

}  // namespace bwk

#endif  // BWK_LAGRANGE_H_
