#ifndef BWK_ADVERSARIES_H_
#define BWK_ADVERSARIES_H_

// Trace generators. Action vectors passed in here include the null action at
// index 0, which must be zero.

#include <vector>

#include "bwk/env.h"

namespace bwk {

// c[i][a]: expected consumption of resource i by action a.
using ConsumptionMatrix = std::vector<std::vector<double>>;

EnvironmentTrace MakeStochastic(const std::vector<double>& r,
                                const ConsumptionMatrix& c, int T, double B,
                                Realization realization =
                                    Realization::kDeterministic);

struct OscillatingParams {
  double sigma_r = 1.0;
  double sigma_c = 1.0;
  std::vector<double> peak_rewards;     // M_r(a)
  ConsumptionMatrix peak_consumptions;  // M_c(i, a)
  int period = 2;
  // Per-action phase offsets as fractions of the period; empty means 0.
  std::vector<double> reward_phase;
  std::vector<double> consumption_phase;
};

// Triangle wave in [0, 1] with period P: 1 at the start of each period, 0 at
// its middle. Both endpoints are hit once per period.
double TriangleWave(int t, int period, int shift);

// r_t(a) = M_r(a) (sigma_r + (1 - sigma_r) g_a(t)),
// c_{t,i}(a) = M_c(i, a) (sigma_c + (1 - sigma_c) h_a(t)).
EnvironmentTrace MakeOscillatingStationary(const OscillatingParams& params,
                                           int T, double B,
                                           Realization realization =
                                               Realization::kDeterministic);

struct AdaptivePriceParams {
  double responsiveness = 0.0;
  double sigma_c = 0.0;  // floor ratio
  int window = 50;       // trailing rounds averaged into the spend signal
};

// Rewards follow `base`. Consumption of every action is
//   clamp(base_c (1 + responsiveness s_t), sigma_c U, U),
//   U = min{1, (1 + responsiveness) max_t base_c, min_t base_c / sigma_c},
// per (i, a), where s_t is the player's average maximum realized consumption
// over the last `window` rounds (unplayed rounds count as 0). With no spend
// the prices are exactly the base schedule, which must therefore be
// sigma_c-stationary itself (ConfigError otherwise).
EnvironmentTrace MakeAdaptivePrice(const EnvironmentTrace& base,
                                   const AdaptivePriceParams& params);

struct ImpossibilityParams {
  double rho = 0.1;
  double sigma_r = 0.5;
  double sigma_c = 0.5;
  double epsilon = 0.1;
  int T = 1000;
  // Forces one of the three cases for y (1, 2 or 3); 0 picks it from the
  // parameters.
  int forced_case = 0;
};

struct ImpossibilityLayout {
  double y = 0.0;
  double z = 0.0;
  int arms = 0;                // K_c, non-null actions
  int y_case = 0;              // 1, 2 or 3
  std::vector<int> batch_end;  // last round of batch j (1-based j), truncated
};

// y = rho if sigma_r <= rho; sqrt(rho sigma_r) if rho <= sigma_r <=
// rho / sigma_c^2; rho / sigma_c otherwise. K_c = 1 + ceil((1 - y) / rho),
// z = (1 - y) / (K_c - 1). Batch 1 has ceil(T y) rounds, later ones ceil(T z).
ImpossibilityLayout LayoutImpossibility(const ImpossibilityParams& params);

// One of the K_c + 1 outcomes q (1-based) of the construction: d = 1,
// K = K_c + 1, B = rho T.
EnvironmentTrace MakeImpossibility(const ImpossibilityParams& params,
                                   int outcome);

// Closed-form benchmark of outcome q: eps^{K_c - 1} T y for q = 1 and
// q = K_c + 1, eps^{K_c - q} T z otherwise (a lower bound there).
double ImpossibilityOpt(const ImpossibilityParams& params, int outcome);

}  // namespace bwk

#endif  // BWK_ADVERSARIES_H_
