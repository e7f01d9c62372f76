#include "bwk/adversaries.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "bwk/errors.h"

namespace bwk {
namespace {

void CheckShape(const std::vector<double>& r, const ConsumptionMatrix& c) {
  if (r.empty()) throw ValidationError("need at least the null action");
  if (c.empty()) throw ValidationError("need at least one resource");
  for (const auto& row : c) {
    if (row.size() != r.size()) {
      throw ValidationError("consumption rows must have one entry per action");
    }
    if (row[0] != 0.0) throw ValidationError("null action must be zero");
  }
  if (r[0] != 0.0) throw ValidationError("null action must be zero");
}

// ceil with a little tolerance, so that T * y = 2500.0000000001 gives 2500.
int CeilRounds(double x) {
  return static_cast<int>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

int PhaseShift(const std::vector<double>& phase, int a, int period) {
  if (phase.empty()) return 0;
  const double f = phase[a];
  if (!(f >= 0.0 && f <= 1.0)) {
    throw ValidationError("phase offsets must lie in [0, 1]");
  }
  return static_cast<int>(std::llround(f * period)) % period;
}

}  // namespace

EnvironmentTrace MakeStochastic(const std::vector<double>& r,
                                const ConsumptionMatrix& c, int T, double B,
                                Realization realization) {
  CheckShape(r, c);
  const int K = static_cast<int>(r.size());
  const int d = static_cast<int>(c.size());
  EnvironmentTrace trace({T, K, d, B}, realization);
  for (int t = 1; t <= T; ++t) {
    for (int a = 0; a < K; ++a) {
      trace.SetReward(t, a, r[a]);
      for (int i = 0; i < d; ++i) trace.SetConsumption(t, i, a, c[i][a]);
    }
  }
  return trace;
}

double TriangleWave(int t, int period, int shift) {
  const int half = period / 2;
  const int m = (t - 1 + shift) % period;
  return static_cast<double>(std::abs(m - half)) / static_cast<double>(half);
}

EnvironmentTrace MakeOscillatingStationary(const OscillatingParams& params,
                                           int T, double B,
                                           Realization realization) {
  CheckShape(params.peak_rewards, params.peak_consumptions);
  if (params.period < 2) throw ValidationError("period must be at least 2");
  if (!(params.sigma_r >= 0.0 && params.sigma_r <= 1.0 &&
        params.sigma_c >= 0.0 && params.sigma_c <= 1.0)) {
    throw ValidationError("stationarity parameters must lie in [0, 1]");
  }
  const int K = static_cast<int>(params.peak_rewards.size());
  const int d = static_cast<int>(params.peak_consumptions.size());
  for (const auto* phase : {&params.reward_phase, &params.consumption_phase}) {
    if (!phase->empty() && phase->size() != static_cast<std::size_t>(K)) {
      throw ValidationError("phase offsets need one entry per action");
    }
  }

  EnvironmentTrace trace({T, K, d, B}, realization);
  const int P = params.period;
  for (int a = 1; a < K; ++a) {
    const int rs = PhaseShift(params.reward_phase, a, P);
    const int cs = PhaseShift(params.consumption_phase, a, P);
    for (int t = 1; t <= T; ++t) {
      const double g = TriangleWave(t, P, rs);
      const double h = TriangleWave(t, P, cs);
      trace.SetReward(t, a,
                      std::min(1.0, params.peak_rewards[a] *
                                        (params.sigma_r +
                                         (1.0 - params.sigma_r) * g)));
      for (int i = 0; i < d; ++i) {
        trace.SetConsumption(
            t, i, a,
            std::min(1.0, params.peak_consumptions[i][a] *
                              (params.sigma_c + (1.0 - params.sigma_c) * h)));
      }
    }
  }
  return trace;
}

EnvironmentTrace MakeAdaptivePrice(const EnvironmentTrace& base,
                                   const AdaptivePriceParams& params) {
  if (base.adaptive() || !base.fully_materialized()) {
    throw ConfigError("adaptive price needs an oblivious base schedule");
  }
  if (!(params.responsiveness >= 0.0)) {
    throw ValidationError("responsiveness must be >= 0");
  }
  if (!(params.sigma_c >= 0.0 && params.sigma_c <= 1.0)) {
    throw ValidationError("floor ratio must lie in [0, 1]");
  }
  if (params.window < 1) throw ValidationError("window must be at least 1");

  const ProblemDims dims = base.dims();
  const int K = dims.K, d = dims.d;
  auto shared = std::make_shared<const EnvironmentTrace>(base);
  std::vector<double> cap(static_cast<std::size_t>(d) * K, 0.0);
  std::vector<double> floor(cap.size(), 0.0);
  for (int i = 0; i < d; ++i) {
    for (int a = 0; a < K; ++a) {
      double peak = 0.0, low = 1.0;
      for (int t = 1; t <= dims.T; ++t) {
        peak = std::max(peak, base.consumption(t, i, a));
        low = std::min(low, base.consumption(t, i, a));
      }
      if (low < params.sigma_c * peak * (1.0 - 1e-12)) {
        throw ConfigError("base schedule is less stationary than the floor");
      }
      double u = std::min(1.0, (1.0 + params.responsiveness) * peak);
      if (params.sigma_c > 0.0) u = std::min(u, low / params.sigma_c);
      u = std::max(u, peak);
      cap[i * K + a] = u;
      floor[i * K + a] = std::min(params.sigma_c * u, low);
    }
  }

  AdaptivityHook hook = [shared, cap, floor, params, K, d](
                            const History& history, int t) {
    double spend = 0.0;
    const auto records = history.records();
    for (auto it = records.rbegin(); it != records.rend(); ++it) {
      if (it->t < t - params.window) break;
      if (it->t >= t) continue;
      double m = 0.0;
      for (double v : it->consumption) m = std::max(m, v);
      spend += m;
    }
    spend /= static_cast<double>(params.window);

    RoundExpectations row;
    row.rewards.resize(static_cast<std::size_t>(K));
    row.consumptions.resize(static_cast<std::size_t>(d) * K);
    for (int a = 0; a < K; ++a) row.rewards[a] = shared->reward(t, a);
    for (int i = 0; i < d; ++i) {
      for (int a = 0; a < K; ++a) {
        const double price = shared->consumption(t, i, a) *
                             (1.0 + params.responsiveness * spend);
        row.consumptions[i * K + a] =
            std::clamp(price, floor[i * K + a], cap[i * K + a]);
      }
    }
    return row;
  };
  return EnvironmentTrace::Adaptive(dims, base.realization(), std::move(hook));
}

ImpossibilityLayout LayoutImpossibility(const ImpossibilityParams& params) {
  const double rho = params.rho, sr = params.sigma_r, sc = params.sigma_c;
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("rho must lie in (0, 1)");
  if (!(sr >= 0.0 && sr <= 1.0 && sc >= 0.0 && sc <= 1.0)) {
    throw ConfigError("stationarity parameters must lie in [0, 1]");
  }
  if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1)");
  }
  if (params.T < 1) throw ConfigError("T must be positive");

  ImpossibilityLayout out;
  if (params.forced_case != 0) {
    if (params.forced_case < 1 || params.forced_case > 3) {
      throw ConfigError("forced case must be 1, 2 or 3");
    }
    out.y_case = params.forced_case;
  } else if (sr <= rho) {
    out.y_case = 1;
  } else if (sc == 0.0 || sr <= rho / (sc * sc)) {
    out.y_case = 2;
  } else {
    out.y_case = 3;
  }
  switch (out.y_case) {
    case 1:
      out.y = rho;
      break;
    case 2:
      out.y = std::sqrt(rho * sr);
      break;
    default:
      if (sc == 0.0) {
        throw ConfigError("the third case for y needs sigma_c > 0");
      }
      out.y = rho / sc;
  }
  if (!(out.y >= rho && out.y < 1.0)) {
    throw ConfigError("parameters give y outside [rho, 1)");
  }
  out.arms = 1 + CeilRounds((1.0 - out.y) / rho);
  out.z = (1.0 - out.y) / static_cast<double>(out.arms - 1);

  const double T = params.T;
  int end = std::min(params.T, CeilRounds(T * out.y));
  out.batch_end.push_back(end);
  const int len = CeilRounds(T * out.z);
  for (int j = 2; j <= out.arms; ++j) {
    end = std::min(params.T, end + len);
    out.batch_end.push_back(end);
  }
  return out;
}

EnvironmentTrace MakeImpossibility(const ImpossibilityParams& params,
                                   int outcome) {
  const ImpossibilityLayout layout = LayoutImpossibility(params);
  const int kc = layout.arms;
  if (outcome < 1 || outcome > kc + 1) {
    throw ConfigError("outcome must lie in [1, " + std::to_string(kc + 1) +
                      "]");
  }
  const int T = params.T;
  EnvironmentTrace trace({T, kc + 1, 1, params.rho * T},
                         Realization::kDeterministic);
  const double eps = params.epsilon;
  const double first_cost = params.rho / layout.y;

  for (int t = 1; t <= layout.batch_end[0]; ++t) {
    trace.SetReward(t, 1, std::pow(eps, kc - 1));
    trace.SetConsumption(t, 0, 1, first_cost);
  }
  if (outcome <= kc) {
    for (int a = 2; a <= outcome; ++a) {
      for (int t = layout.batch_end[a - 2] + 1; t <= layout.batch_end[a - 1];
           ++t) {
        trace.SetReward(t, a, std::pow(eps, kc - a));
        trace.SetConsumption(t, 0, a, 1.0);
      }
    }
  } else {
    const double tail_cost =
        params.sigma_c > 0.0 ? std::min(1.0, first_cost / params.sigma_c)
                             : 1.0;
    for (int t = layout.batch_end[0] + 1; t <= T; ++t) {
      trace.SetReward(t, 1, params.sigma_r * std::pow(eps, kc - 1));
      trace.SetConsumption(t, 0, 1, tail_cost);
    }
  }
  return trace;
}

double ImpossibilityOpt(const ImpossibilityParams& params, int outcome) {
  const ImpossibilityLayout layout = LayoutImpossibility(params);
  const int kc = layout.arms;
  if (outcome < 1 || outcome > kc + 1) {
    throw ConfigError("outcome out of range");
  }
  const double T = params.T;
  if (outcome == 1 || outcome == kc + 1) {
    return std::pow(params.epsilon, kc - 1) * T * layout.y;
  }
  return std::pow(params.epsilon, kc - outcome) * T * layout.z;
}

}  // namespace bwk
