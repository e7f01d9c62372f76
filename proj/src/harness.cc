#include "bwk/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "bwk/benchmark.h"
#include "bwk/csv.h"
#include "bwk/errors.h"
#include "bwk/restart.h"
#include "bwk/rng.h"

namespace bwk {
namespace {

const std::set<std::string> kCommonKeys = {
    "generator",   "realization", "T",           "budget",      "rho",
    "delta",       "algorithm",   "feedback",    "t_res",       "t_res_constant",
    "seeds",       "seed_list",   "master_seed", "threads",     "out",
    "exp3p_gamma", "exp3p_eta",   "exp3p_beta",  "hedge_eta",   "action_hedge_eta"};

const std::set<std::string> kScheduleKeys = {"rewards", "consumptions"};
const std::set<std::string> kOscillatingKeys = {
    "sigma_r", "sigma_c", "period", "reward_phase", "consumption_phase"};
const std::set<std::string> kAdaptiveKeys = {"responsiveness", "window"};
const std::set<std::string> kImpossibilityKeys = {"sigma_r", "sigma_c",
                                                  "epsilon", "outcome",
                                                  "y_case"};

class Reader {
 public:
  explicit Reader(const ConfigMap& map) : map_(map) {}

  bool Has(const std::string& key) const { return map_.count(key) > 0; }

  const std::string& Get(const std::string& key) const {
    const auto it = map_.find(key);
    if (it == map_.end()) throw ConfigError("missing key '" + key + "'");
    return it->second;
  }
  double Double(const std::string& key, double fallback) const {
    return Has(key) ? ParseDouble(Get(key), key) : fallback;
  }
  double Double(const std::string& key) const {
    return ParseDouble(Get(key), key);
  }
  int Int(const std::string& key, int fallback) const {
    return Has(key) ? Int(key) : fallback;
  }
  int Int(const std::string& key) const {
    const long long v = ParseInt(Get(key), key);
    if (v < -2147483647LL || v > 2147483647LL) {
      throw ConfigError("value of '" + key + "' is out of range");
    }
    return static_cast<int>(v);
  }

 private:
  const ConfigMap& map_;
};

Generator ParseGenerator(const std::string& name) {
  if (name == "stochastic") return Generator::kStochastic;
  if (name == "oscillating") return Generator::kOscillating;
  if (name == "adaptive_price") return Generator::kAdaptivePrice;
  if (name == "impossibility") return Generator::kImpossibility;
  throw ConfigError("unknown generator '" + name + "'");
}

// Non-null actions in the file; the null action is prepended here.
std::vector<double> WithNullAction(std::vector<double> v) {
  v.insert(v.begin(), 0.0);
  return v;
}

void CheckKeys(const ConfigMap& map, Generator g) {
  std::set<std::string> allowed = kCommonKeys;
  switch (g) {
    case Generator::kStochastic:
      allowed.insert(kScheduleKeys.begin(), kScheduleKeys.end());
      break;
    case Generator::kAdaptivePrice:
      allowed.insert(kAdaptiveKeys.begin(), kAdaptiveKeys.end());
      [[fallthrough]];
    case Generator::kOscillating:
      allowed.insert(kScheduleKeys.begin(), kScheduleKeys.end());
      allowed.insert(kOscillatingKeys.begin(), kOscillatingKeys.end());
      break;
    case Generator::kImpossibility:
      allowed.insert(kImpossibilityKeys.begin(), kImpossibilityKeys.end());
      break;
  }
  for (const auto& [key, value] : map) {
    if (!allowed.count(key)) {
      throw ConfigError("key '" + key + "' does not apply to generator '" +
                        GeneratorName(g) + "'");
    }
  }
}

}  // namespace

std::string GeneratorName(Generator g) {
  switch (g) {
    case Generator::kStochastic:
      return "stochastic";
    case Generator::kOscillating:
      return "oscillating";
    case Generator::kAdaptivePrice:
      return "adaptive_price";
    case Generator::kImpossibility:
      return "impossibility";
  }
  return "?";
}

std::string AlgorithmName(Algorithm a) {
  return a == Algorithm::kAlgorithm1 ? "algorithm1" : "algorithm2";
}

ExperimentConfig ParseExperimentConfig(const ConfigMap& map) {
  const Reader in(map);
  ExperimentConfig cfg;
  EnvSpec& env = cfg.env;
  env.generator = ParseGenerator(in.Get("generator"));
  CheckKeys(map, env.generator);

  const std::string realization =
      in.Has("realization") ? in.Get("realization") : "deterministic";
  if (realization == "deterministic") {
    env.realization = Realization::kDeterministic;
  } else if (realization == "bernoulli") {
    env.realization = Realization::kBernoulli;
  } else {
    throw ConfigError("realization must be deterministic or bernoulli");
  }

  env.T = in.Int("T");
  if (env.T < 1) throw ConfigError("T must be positive");
  if (in.Has("budget") == in.Has("rho")) {
    throw ConfigError("give exactly one of 'budget' and 'rho'");
  }
  if (env.generator == Generator::kImpossibility) {
    if (!in.Has("rho")) throw ConfigError("impossibility needs 'rho'");
    env.rho = in.Double("rho");
    env.budget = env.rho * env.T;
    env.sigma_r = in.Double("sigma_r");
    env.sigma_c = in.Double("sigma_c");
    env.epsilon = in.Double("epsilon", 0.1);
    env.outcome = in.Int("outcome", 0);
    env.y_case = in.Int("y_case", 0);
  } else {
    env.budget = in.Has("budget") ? in.Double("budget")
                                  : in.Double("rho") * env.T;
    env.rewards = WithNullAction(ParseDoubleList(in.Get("rewards"), "rewards"));
    for (auto& row : ParseMatrix(in.Get("consumptions"), "consumptions")) {
      if (row.size() + 1 != env.rewards.size()) {
        throw ConfigError("each consumption row needs one entry per reward");
      }
      env.consumptions.push_back(WithNullAction(std::move(row)));
    }
    if (env.consumptions.empty()) {
      throw ConfigError("need at least one consumption row");
    }
    if (env.generator != Generator::kStochastic) {
      env.sigma_r = in.Double("sigma_r");
      env.sigma_c = in.Double("sigma_c");
      env.period = in.Int("period", env.T);
      for (const auto& [key, target] :
           {std::pair{"reward_phase", &env.reward_phase},
            std::pair{"consumption_phase", &env.consumption_phase}}) {
        if (!in.Has(key)) continue;
        *target = WithNullAction(ParseDoubleList(in.Get(key), key));
        if (target->size() != env.rewards.size()) {
          throw ConfigError(std::string(key) + " needs one entry per reward");
        }
      }
    }
    if (env.generator == Generator::kAdaptivePrice) {
      env.responsiveness = in.Double("responsiveness", 0.0);
      env.window = in.Int("window", 50);
    }
  }
  if (!(env.budget >= 0.0 && env.budget <= env.T)) {
    throw ConfigError("budget must lie in [0, T]");
  }

  const std::string algorithm =
      in.Has("algorithm") ? in.Get("algorithm") : "algorithm1";
  if (algorithm == "algorithm1") {
    cfg.algorithm = Algorithm::kAlgorithm1;
    if (in.Has("t_res") || in.Has("t_res_constant")) {
      throw ConfigError("t_res applies to algorithm2 only");
    }
  } else if (algorithm == "algorithm2") {
    cfg.algorithm = Algorithm::kAlgorithm2;
    const std::string t_res = in.Has("t_res") ? in.Get("t_res") : "auto";
    if (t_res != "auto") {
      cfg.t_res = in.Int("t_res");
      if (*cfg.t_res < 1 || *cfg.t_res > env.T) {
        throw ConfigError("t_res must lie in [1, T]");
      }
    }
    cfg.t_res_constant = in.Double("t_res_constant", 1.0);
    if (!(cfg.t_res_constant > 0.0)) {
      throw ConfigError("t_res_constant must be positive");
    }
  } else {
    throw ConfigError("algorithm must be algorithm1 or algorithm2");
  }

  const std::string feedback = in.Has("feedback") ? in.Get("feedback") : "bandit";
  if (feedback == "bandit") {
    cfg.feedback = Feedback::kBandit;
  } else if (feedback == "full_information") {
    cfg.feedback = Feedback::kFullInformation;
  } else {
    throw ConfigError("feedback must be bandit or full_information");
  }

  cfg.delta = in.Double("delta", 0.05);
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) {
    throw ConfigError("delta must lie in (0, 1)");
  }

  const int exp3p_keys = in.Has("exp3p_gamma") + in.Has("exp3p_eta") +
                         in.Has("exp3p_beta");
  if (exp3p_keys == 3) {
    cfg.tuning.exp3p = Exp3PParams{in.Double("exp3p_gamma"),
                                   in.Double("exp3p_eta"),
                                   in.Double("exp3p_beta")};
  } else if (exp3p_keys != 0) {
    throw ConfigError("give all of exp3p_gamma, exp3p_eta and exp3p_beta");
  }
  if (in.Has("hedge_eta")) cfg.tuning.hedge_eta = in.Double("hedge_eta");
  if (in.Has("action_hedge_eta")) {
    cfg.tuning.action_hedge_eta = in.Double("action_hedge_eta");
  }

  if (in.Has("seeds") == in.Has("seed_list")) {
    throw ConfigError("give exactly one of 'seeds' and 'seed_list'");
  }
  if (in.Has("seed_list")) {
    for (const std::string& field : SplitFields(in.Get("seed_list"))) {
      const long long s = ParseInt(field, "seed_list");
      if (s < 0) throw ConfigError("seeds must be non-negative");
      cfg.seeds.push_back(static_cast<std::uint64_t>(s));
    }
  } else {
    const int count = in.Int("seeds");
    const long long master = in.Has("master_seed")
                                 ? ParseInt(in.Get("master_seed"), "master_seed")
                                 : 1;
    if (master < 0) throw ConfigError("master_seed must be non-negative");
    cfg.seeds = DeriveSeeds(static_cast<std::uint64_t>(master), count);
  }
  if (cfg.seeds.empty()) throw ConfigError("seed list is empty");
  cfg.threads = in.Int("threads", 0);
  if (cfg.threads < 0) throw ConfigError("threads must be >= 0");
  if (in.Has("out")) cfg.out = in.Get("out");

  // Surface generator errors before any run starts.
  BuildEnvironment(env);
  return cfg;
}

std::vector<std::uint64_t> DeriveSeeds(std::uint64_t master, int count) {
  if (count < 1) throw ConfigError("need at least one seed");
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < count; ++i) {
    seeds.push_back(SplitSeed(master, static_cast<std::uint64_t>(i)));
  }
  return seeds;
}

BuiltEnvironment BuildEnvironment(const EnvSpec& spec) {
  switch (spec.generator) {
    case Generator::kStochastic: {
      EnvironmentTrace trace = MakeStochastic(spec.rewards, spec.consumptions,
                                              spec.T, spec.budget,
                                              spec.realization);
      return {trace, trace, 1.0, 1.0};
    }
    case Generator::kOscillating:
    case Generator::kAdaptivePrice: {
      OscillatingParams p;
      p.sigma_r = spec.sigma_r;
      p.sigma_c = spec.sigma_c;
      p.peak_rewards = spec.rewards;
      p.peak_consumptions = spec.consumptions;
      p.period = spec.period;
      p.reward_phase = spec.reward_phase;
      p.consumption_phase = spec.consumption_phase;
      EnvironmentTrace base = MakeOscillatingStationary(p, spec.T, spec.budget,
                                                        spec.realization);
      if (spec.generator == Generator::kOscillating) {
        return {base, base, spec.sigma_r, spec.sigma_c};
      }
      EnvironmentTrace adaptive = MakeAdaptivePrice(
          base, {spec.responsiveness, spec.sigma_c, spec.window});
      return {adaptive, base, spec.sigma_r, spec.sigma_c};
    }
    case Generator::kImpossibility: {
      ImpossibilityParams p{spec.rho,     spec.sigma_r, spec.sigma_c,
                            spec.epsilon, spec.T,       spec.y_case};
      const int outcome = spec.outcome == 0
                              ? LayoutImpossibility(p).arms + 1
                              : spec.outcome;
      EnvironmentTrace trace = MakeImpossibility(p, outcome);
      trace.set_realization(spec.realization);
      return {trace, trace, spec.sigma_r, spec.sigma_c};
    }
  }
  throw ConfigError("unknown generator");
}

RunRecord RunEpisode(const ExperimentConfig& config, std::uint64_t seed,
                     int run_id) {
  BuiltEnvironment env = BuildEnvironment(config.env);
  EnvironmentTrace& trace = env.trace;
  const ProblemDims dims = trace.dims();

  LagrangeConfig lc;
  lc.dims = dims;
  lc.delta = config.delta;
  lc.feedback = config.feedback;
  lc.tuning = config.tuning;
  lc.keep_log = false;

  RunRecord rec;
  rec.run_id = run_id;
  rec.seed = seed;
  rec.algorithm = config.algorithm;
  rec.dims = dims;
  rec.sigma_r_declared = env.declared_sigma_r;
  rec.sigma_c_declared = env.declared_sigma_c;

  std::optional<OptSolution> oracle_opt;
  BwkRunResult run;
  if (config.algorithm == Algorithm::kAlgorithm1) {
    run = RunAlgorithm1(trace, lc, std::nullopt, seed);
  } else {
    int t_res = dims.T;
    if (config.t_res) {
      t_res = *config.t_res;
    } else if (dims.B > 0.0) {
      oracle_opt = OptFd(env.oracle, dims.B);
      const double e0 =
          ConsumptionVariation(env.oracle, oracle_opt->distribution);
      t_res = ChooseRestartLength(dims.rho(), dims.T, e0,
                                  config.t_res_constant);
    }
    RestartRunResult r2 =
        RunAlgorithm2(trace, RestartConfig{lc, t_res, std::nullopt}, seed);
    rec.restart_length = t_res;
    if (r2.restart_length_below_inverse_rho && dims.B > 0.0) {
      rec.flags.push_back("t_res_below_inverse_rho");
    }
    run = std::move(r2.run);
  }
  if (trace.adaptive()) trace.MaterializeThrough(dims.T, run.history);

  const OptSolution opt = (oracle_opt && !trace.adaptive())
                              ? *oracle_opt
                              : OptFd(trace, dims.B);
  rec.stopping_round = run.stopping_round;
  rec.reward = run.total_reward;
  rec.opt_fd = opt.value;
  rec.ratio = opt.value > 0.0 ? run.total_reward / opt.value : 0.0;
  rec.variation = ConsumptionVariation(trace, opt.distribution);
  const StationarityParams measured = MeasureStationarity(trace);
  rec.sigma_r_measured = measured.sigma_r;
  rec.sigma_c_measured = measured.sigma_c;
  for (double c : run.consumed) rec.max_consumed = std::max(rec.max_consumed, c);

  if (measured.sigma_r < rec.sigma_r_declared - 1e-12 ||
      measured.sigma_c < rec.sigma_c_declared - 1e-12) {
    rec.flags.push_back("stationarity_below_declared");
  }
  if (rec.max_consumed > dims.B) rec.flags.push_back("budget_overdrawn");
  if (config.env.generator == Generator::kStochastic &&
      rec.ratio > 1.0 + 3.0 / std::sqrt(static_cast<double>(dims.T))) {
    rec.flags.push_back("ratio_above_noise_bound");
  }
  return rec;
}

std::vector<RunRecord> RunExperiment(const ExperimentConfig& config) {
  const int n = static_cast<int>(config.seeds.size());
  if (n == 0) throw ConfigError("seed list is empty");
  int threads = config.threads;
  if (threads == 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min(threads, n);

  std::vector<RunRecord> records(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        records[i] = RunEpisode(config, config.seeds[i], i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

double NearestRank(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("no values");
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("quantile outside [0, 1]");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  const long long rank = std::max(1LL, static_cast<long long>(std::ceil(q * n)));
  return values[static_cast<std::size_t>(rank - 1)];
}

Summary Summarize(std::span<const RunRecord> records, double threshold) {
  if (records.empty()) throw ValidationError("cannot summarize zero records");
  std::vector<double> ratios;
  for (const RunRecord& r : records) ratios.push_back(r.ratio);
  const double n = static_cast<double>(ratios.size());

  Summary s;
  s.count = static_cast<int>(ratios.size());
  double total = 0.0;
  int hits = 0;
  for (double v : ratios) {
    total += v;
    if (v >= threshold) ++hits;
  }
  s.mean = total / n;
  if (s.count > 1) {
    double sq = 0.0;
    for (double v : ratios) sq += (v - s.mean) * (v - s.mean);
    s.stdev = std::sqrt(sq / (n - 1.0));
  }
  s.min = *std::min_element(ratios.begin(), ratios.end());
  s.max = *std::max_element(ratios.begin(), ratios.end());
  s.p05 = NearestRank(ratios, 0.05);
  s.p25 = NearestRank(ratios, 0.25);
  s.median = NearestRank(ratios, 0.5);
  s.p75 = NearestRank(ratios, 0.75);
  s.p95 = NearestRank(ratios, 0.95);
  s.fraction_at_least = hits / n;
  return s;
}

void WriteRunsCsv(std::span<const RunRecord> records, std::ostream& out) {
  out << "run_id,seed,algo,T,K,d,rho,sigma_r_decl,sigma_c_decl,sigma_r_meas,"
         "sigma_c_meas,T_A,REW,OPT_FD,ratio,E,T_res\n";
  for (const RunRecord& r : records) {
    out << r.run_id << ',' << r.seed << ',' << AlgorithmName(r.algorithm)
        << ',' << r.dims.T << ',' << r.dims.K << ',' << r.dims.d << ','
        << FormatDouble(r.dims.rho()) << ','
        << FormatDouble(r.sigma_r_declared) << ','
        << FormatDouble(r.sigma_c_declared) << ','
        << FormatDouble(r.sigma_r_measured) << ','
        << FormatDouble(r.sigma_c_measured) << ',' << r.stopping_round << ','
        << FormatDouble(r.reward) << ',' << FormatDouble(r.opt_fd) << ','
        << FormatDouble(r.ratio) << ',' << FormatDouble(r.variation) << ','
        << r.restart_length << '\n';
  }
}

void WriteSummary(const Summary& s, std::ostream& out) {
  out << "runs " << s.count << "  ratio mean " << FormatDouble(s.mean)
      << "  stdev " << FormatDouble(s.stdev) << "\n"
      << "  min " << FormatDouble(s.min) << "  p05 " << FormatDouble(s.p05)
      << "  p25 " << FormatDouble(s.p25) << "  median "
      << FormatDouble(s.median) << "  p75 " << FormatDouble(s.p75) << "  p95 "
      << FormatDouble(s.p95) << "  max " << FormatDouble(s.max) << '\n';
}

std::vector<RunRecord> RunSweep(const ConfigMap& base, const std::string& param,
                                double from, double to, int steps) {
  if (steps < 1) throw ConfigError("steps must be at least 1");
  static const std::set<std::string> kIntegerKeys = {
      "T", "period", "window", "outcome", "y_case", "seeds", "t_res",
      "threads", "master_seed"};
  std::vector<RunRecord> all;
  for (int k = 0; k < steps; ++k) {
    const double v =
        steps == 1 ? from : from + (to - from) * k / static_cast<double>(steps - 1);
    ConfigMap map = base;
    map[param] = kIntegerKeys.count(param)
                     ? std::to_string(std::llround(v))
                     : FormatDouble(v);
    ExperimentConfig cfg = ParseExperimentConfig(map);
    for (RunRecord& r : RunExperiment(cfg)) {
      r.run_id = static_cast<int>(all.size());
      all.push_back(std::move(r));
    }
  }
  return all;
}

}  // namespace bwk
