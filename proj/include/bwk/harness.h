#ifndef BWK_HARNESS_H_
#define BWK_HARNESS_H_

// Seeded Monte-Carlo experiments: build the environment of every seed, run
// one of the two players on it, and score it against the per-episode OPT_FD.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bwk/adversaries.h"
#include "bwk/config.h"
#include "bwk/env.h"
#include "bwk/lagrange.h"

namespace bwk {

enum class Generator { kStochastic, kOscillating, kAdaptivePrice, kImpossibility };
enum class Algorithm { kAlgorithm1, kAlgorithm2 };

struct EnvSpec {
  Generator generator = Generator::kStochastic;
  Realization realization = Realization::kDeterministic;
  int T = 1;
  double budget = 0.0;  // impossibility: rho T
  // Null action included at index 0 (zero). Peaks for the oscillating and
  // adaptive generators.
  std::vector<double> rewards;
  ConsumptionMatrix consumptions;
  double rho = 0.0;  // impossibility only
  double sigma_r = 1.0;
  double sigma_c = 1.0;
  int period = 2;
  std::vector<double> reward_phase;
  std::vector<double> consumption_phase;
  double responsiveness = 0.0;
  int window = 50;
  double epsilon = 0.1;
  int outcome = 0;  // 0 = K_c + 1
  int y_case = 0;   // 0 = from the parameters
};

struct ExperimentConfig {
  EnvSpec env;
  Algorithm algorithm = Algorithm::kAlgorithm1;
  double delta = 0.05;
  Feedback feedback = Feedback::kBandit;
  LearnerTuning tuning;
  std::optional<int> t_res;  // algorithm2; empty = auto
  double t_res_constant = 1.0;
  std::vector<std::uint64_t> seeds;
  int threads = 0;  // 0 = hardware concurrency
  std::string out;  // runs.csv path, may be empty
};

// Throws ConfigError for unknown keys, keys that do not belong to the chosen
// generator, missing required keys and inconsistent values.
ExperimentConfig ParseExperimentConfig(const ConfigMap& map);

std::string GeneratorName(Generator g);
std::string AlgorithmName(Algorithm a);

struct BuiltEnvironment {
  EnvironmentTrace trace;
  // Oblivious schedule a player may be tuned against before the run (the
  // trace itself unless it is adaptive, then its base schedule).
  EnvironmentTrace oracle;
  double declared_sigma_r = 1.0;
  double declared_sigma_c = 1.0;
};

BuiltEnvironment BuildEnvironment(const EnvSpec& spec);

struct RunRecord {
  int run_id = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::kAlgorithm1;
  ProblemDims dims;
  double sigma_r_declared = 1.0;
  double sigma_c_declared = 1.0;
  double sigma_r_measured = 1.0;
  double sigma_c_measured = 1.0;
  int stopping_round = 0;  // T_A
  double reward = 0.0;     // REW
  double opt_fd = 0.0;
  double ratio = 0.0;  // REW / OPT_FD, 0 when OPT_FD = 0
  double variation = 0.0;  // E of A* on the materialized trace
  int restart_length = 0;  // T_res, 0 for algorithm1
  double max_consumed = 0.0;
  // Contract problems: stationarity below declared, budget overdrawn, ratio
  // above the realization-noise bound, T_res < 1/rho.
  std::vector<std::string> flags;
};

// One episode of the experiment with the given seed.
RunRecord RunEpisode(const ExperimentConfig& config, std::uint64_t seed,
                     int run_id = 0);

// One record per seed, in seed order, independent of the thread count.
std::vector<RunRecord> RunExperiment(const ExperimentConfig& config);

// Seeds SplitSeed(master, 0..count-1).
std::vector<std::uint64_t> DeriveSeeds(std::uint64_t master, int count);

struct Summary {
  int count = 0;
  double mean = 0.0;
  double stdev = 0.0;  // sample standard deviation, 0 for one record
  double min = 0.0;
  double p05 = 0.0;
  double p25 = 0.0;
  double median = 0.0;
  double p75 = 0.0;
  double p95 = 0.0;
  double max = 0.0;
  double fraction_at_least = 0.0;  // share of ratios >= threshold
};

// Statistics of the ratios; quantiles by the nearest-rank rule.
Summary Summarize(std::span<const RunRecord> records, double threshold = 0.0);

// Nearest-rank q-quantile of unsorted values.
double NearestRank(std::vector<double> values, double q);

void WriteRunsCsv(std::span<const RunRecord> records, std::ostream& out);
void WriteSummary(const Summary& summary, std::ostream& out);

// Runs the experiment once per value of `param`, from `from` to `to` in
// `steps` evenly spaced values; run ids continue across values.
std::vector<RunRecord> RunSweep(const ConfigMap& base, const std::string& param,
                                double from, double to, int steps);

}  // namespace bwk

#endif  // BWK_HARNESS_H_
