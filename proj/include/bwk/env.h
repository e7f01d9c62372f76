#ifndef BWK_ENV_H_
#define BWK_ENV_H_

// The BwK world model: horizon, resources, budgets, an action set whose
// action 0 is the null action, expected and realized payoffs, and the
// stationarity measurement of an expectation schedule.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace bwk {

struct ProblemDims {
  int T = 1;       // rounds
  int K = 1;       // actions, including the null action 0
  int d = 1;       // resources
  double B = 0.0;  // per-resource budget

  double rho() const { return B / static_cast<double>(T); }

  // Throws ValidationError unless T, K, d >= 1 and 0 <= B <= T.
  void Validate() const;
};

enum class Realization {
  kDeterministic,  // realized == expected
  kBernoulli,      // each realized entry is 0/1 with the expected mean
};

// Expectations of a single round. Consumptions are resource-major:
// consumptions[i * K + a] is c_{t,i}(a) for the 0-based resource i.
struct RoundExpectations {
  std::vector<double> rewards;
  std::vector<double> consumptions;
};

struct RoundRecord {
  int t = 0;       // 1-based round
  int action = 0;  // played action
  double reward = 0.0;
  std::vector<double> consumption;  // length d
};

// Rounds actually played, in order.
class History {
 public:
  void Append(RoundRecord record);
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const RoundRecord& operator[](std::size_t i) const { return records_[i]; }
  const RoundRecord& back() const { return records_.back(); }
  std::span<const RoundRecord> records() const { return records_; }

 private:
  std::vector<RoundRecord> records_;
};

// Rule producing round-t expectations from the history of rounds played so
// far. Rounds the player did not play (after stopping, or skipped between
// restart batches) are absent from the history and should be treated as null
// plays. Must be a pure function of its arguments.
using AdaptivityHook =
    std::function<RoundExpectations(const History& history, int t)>;

class EnvironmentTrace {
 public:
  // Oblivious trace with all-zero expectations, ready to be filled in.
  EnvironmentTrace(ProblemDims dims, Realization realization);

  // Adaptive trace; rounds are materialized lazily through `hook`.
  static EnvironmentTrace Adaptive(ProblemDims dims, Realization realization,
                                   AdaptivityHook hook);

  const ProblemDims& dims() const { return dims_; }
  Realization realization() const { return realization_; }
  void set_realization(Realization r) { realization_ = r; }
  bool adaptive() const { return static_cast<bool>(hook_); }
  int materialized_rounds() const { return materialized_; }
  bool fully_materialized() const { return materialized_ == dims_.T; }

  // 1-based round, 0-based action and resource.
  double reward(int t, int a) const {
    return rewards_[Offset(t) * dims_.K + a];
  }
  double consumption(int t, int i, int a) const {
    return consumptions_[(Offset(t) * dims_.d + i) * dims_.K + a];
  }
  RoundExpectations Round(int t) const;

  // Setters for oblivious traces. Throw on adaptive traces, on values outside
  // [0, 1] and on nonzero values for the null action.
  void SetReward(int t, int a, double value);
  void SetConsumption(int t, int i, int a, double value);

  // Materializes every round up to and including `t` from `history`.
  // No-op for oblivious traces and for rounds already written.
  void MaterializeThrough(int t, const History& history);

 private:
  std::size_t Offset(int t) const { return static_cast<std::size_t>(t - 1); }
  void CheckRound(int t) const;
  void WriteRound(int t, const RoundExpectations& row);

  ProblemDims dims_;
  Realization realization_;
  AdaptivityHook hook_;
  int materialized_ = 0;
  std::vector<double> rewards_;       // T x K
  std::vector<double> consumptions_;  // T x d x K
};

struct StationarityParams {
  double sigma_r = 1.0;
  double sigma_c = 1.0;
};

struct SampledRound {
  double reward = 0.0;
  std::vector<double> consumption;  // length d
  RoundExpectations expected;       // the full expectation row of round t
};

// Realizes round `t` for `action`. Adaptive traces are materialized through
// `t` first. Bernoulli draws use counter-mode sub-streams of `seed` keyed by
// (t, action, entry), so identical seeds give bit-identical realizations no
// matter what the player does elsewhere. Throws std::out_of_range for bad
// round or action indices.
SampledRound SampleRound(EnvironmentTrace& trace, const History& history,
                         int t, int action, std::uint64_t seed);

// Same as SampleRound without the expectation row copy (hot loop variant).
void RealizeRound(EnvironmentTrace& trace, const History& history, int t,
                  int action, std::uint64_t seed, double& reward,
                  std::span<double> consumption);

// Largest (sigma_r, sigma_c) the fully materialized trace satisfies. Actions
// whose maximum is 0 contribute ratio 1.
StationarityParams MeasureStationarity(const EnvironmentTrace& trace);

// Sum over t < T of max_i |E_{a~dist}[c_{t,i}(a) - c_{t+1,i}(a)]|.
double ConsumptionVariation(const EnvironmentTrace& trace,
                            std::span<const double> dist);

// Throws ValidationError unless `dist` has `size` non-negative entries that
// sum to 1 within 1e-12.
void ValidateDistribution(std::span<const double> dist, int size);

// Mixed expectations of round t under a distribution over actions.
double MixedReward(const EnvironmentTrace& trace, int t,
                   std::span<const double> dist);
double MixedConsumption(const EnvironmentTrace& trace, int t, int i,
                        std::span<const double> dist);

// Trace CSV: header `t,action,r,c_1,...,c_d`, one row per (round, action),
// 1-based rounds; null-action rows are omitted on write and optional on read.
void WriteTraceCsv(const EnvironmentTrace& trace, std::ostream& out);
EnvironmentTrace ReadTraceCsv(std::istream& in, double budget,
                              Realization realization =
                                  Realization::kDeterministic);

}  // namespace bwk

#endif  // BWK_ENV_H_
