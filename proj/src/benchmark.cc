#include "bwk/benchmark.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "bwk/errors.h"
#include "bwk/lp.h"

namespace bwk {
namespace {

struct FixedSolution {
  double value = 0.0;
  std::vector<double> p;  // non-null actions 1..K-1
};

// max sum_a p_a R_a s.t. sum_a p_a S_{i,a} <= budget, sum_a p_a <= 1 over
// non-null actions. `S` is resource-major with K columns; column 0 (null) is
// ignored.
FixedSolution SolveSimplex(std::span<const double> R, std::span<const double> S,
                           int K, int d, double budget) {
  PackingLp lp;
  lp.rows = d + 1;
  lp.cols = K - 1;
  lp.A.assign(static_cast<std::size_t>(lp.rows) * lp.cols, 0.0);
  for (int i = 0; i < d; ++i) {
    for (int a = 1; a < K; ++a) lp.A[i * lp.cols + a - 1] = S[i * K + a];
  }
  for (int a = 1; a < K; ++a) lp.A[d * lp.cols + a - 1] = 1.0;
  lp.b.assign(static_cast<std::size_t>(d), budget);
  lp.b.push_back(1.0);
  lp.c.assign(R.begin() + 1, R.end());
  LpSolution sol = SolvePackingLp(lp);
  return {sol.value, std::move(sol.x)};
}

// d = 1: an optimal vertex has at most two non-null actions, so it is one of
// a single action scaled to the budget (or to 1), or a pair with both the
// budget and the simplex constraint tight.
FixedSolution SolveSingleResource(std::span<const double> R,
                                  std::span<const double> S, int K,
                                  double budget) {
  FixedSolution best;
  best.p.assign(static_cast<std::size_t>(K - 1), 0.0);
  int best_a = -1, best_b = -1;
  double best_pa = 0.0;
  for (int a = 1; a < K; ++a) {
    const double pa = S[a] <= budget ? 1.0 : budget / S[a];
    const double v = pa * R[a];
    if (v > best.value) {
      best.value = v;
      best_a = a;
      best_b = -1;
      best_pa = pa;
    }
  }
  for (int a = 1; a < K; ++a) {
    for (int b = a + 1; b < K; ++b) {
      if (S[a] == S[b]) continue;
      const double pa = (budget - S[b]) / (S[a] - S[b]);
      if (!(pa > 0.0 && pa < 1.0)) continue;
      const double v = pa * R[a] + (1.0 - pa) * R[b];
      if (v > best.value) {
        best.value = v;
        best_a = a;
        best_b = b;
        best_pa = pa;
      }
    }
  }
  if (best_a > 0) best.p[best_a - 1] = best_pa;
  if (best_b > 0) best.p[best_b - 1] = 1.0 - best_pa;
  return best;
}

FixedSolution SolveFixed(std::span<const double> R, std::span<const double> S,
                         int K, int d, double budget, bool allow_fast_path) {
  if (K == 1) return {};
  bool any_reward = false;
  for (int a = 1; a < K; ++a) any_reward = any_reward || R[a] > 0.0;
  if (!any_reward) return {0.0, std::vector<double>(K - 1, 0.0)};
  if (d == 1 && allow_fast_path) return SolveSingleResource(R, S, K, budget);
  return SolveSimplex(R, S, K, d, budget);
}

std::vector<double> WithNull(const std::vector<double>& p) {
  std::vector<double> dist(p.size() + 1, 0.0);
  double mass = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    dist[a + 1] = p[a];
    mass += p[a];
  }
  dist[0] = std::max(0.0, 1.0 - mass);
  return dist;
}

OptSolution Sweep(const EnvironmentTrace& trace, double budget,
                  bool allow_fast_path) {
  if (!trace.fully_materialized()) {
    throw std::logic_error("OPT_FD needs a fully materialized trace");
  }
  if (!(budget >= 0.0)) throw ValidationError("budget must be >= 0");
  const ProblemDims& dims = trace.dims();
  const int K = dims.K, d = dims.d;

  OptSolution best;
  best.distribution.assign(static_cast<std::size_t>(K), 0.0);
  best.distribution[0] = 1.0;

  std::vector<double> R(K, 0.0), S(static_cast<std::size_t>(d) * K, 0.0);
  for (int t = 1; t <= dims.T; ++t) {
    for (int a = 0; a < K; ++a) {
      R[a] += trace.reward(t, a);
      for (int i = 0; i < d; ++i) S[i * K + a] += trace.consumption(t, i, a);
    }
    FixedSolution sol = SolveFixed(R, S, K, d, budget, allow_fast_path);
    if (sol.value > best.value * (1.0 + 1e-12)) {
      best.value = sol.value;
      best.stopping_round = t;
      best.distribution = WithNull(sol.p);
    }
  }
  best.fraction =
      static_cast<double>(best.stopping_round) / static_cast<double>(dims.T);
  return best;
}

// Calls `visit` with every vector of K non-negative integers summing to m.
void ForEachComposition(int K, int m,
                        const std::function<void(const std::vector<int>&)>&
                            visit) {
  std::vector<int> counts(static_cast<std::size_t>(K), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == K - 1) {
      counts[pos] = left;
      visit(counts);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      counts[pos] = c;
      rec(pos + 1, left - c);
    }
  };
  rec(0, m);
}

int GridSteps(double resolution) {
  if (!(resolution > 0.0 && resolution <= 1.0)) {
    throw ValidationError("grid resolution must lie in (0, 1]");
  }
  const double steps = 1.0 / resolution;
  const long long m = std::llround(steps);
  if (std::abs(steps - static_cast<double>(m)) > 1e-6 * steps) {
    throw ValidationError("1 / resolution must be an integer");
  }
  return static_cast<int>(m);
}

void CheckStochasticShape(std::span<const double> r,
                          const std::vector<std::vector<double>>& c) {
  if (r.empty()) throw ValidationError("need at least the null action");
  if (c.empty()) throw ValidationError("need at least one resource");
  for (const auto& row : c) {
    if (row.size() != r.size()) {
      throw ValidationError("consumption rows must have K entries");
    }
    if (row[0] != 0.0) throw ValidationError("null action must be zero");
  }
  if (r[0] != 0.0) throw ValidationError("null action must be zero");
}

}  // namespace

OptSolution OptFd(const EnvironmentTrace& trace, double budget) {
  return Sweep(trace, budget, true);
}

OptSolution OptFdSimplex(const EnvironmentTrace& trace, double budget) {
  return Sweep(trace, budget, false);
}

OptSolution OptFdStochastic(std::span<const double> r,
                            const std::vector<std::vector<double>>& c,
                            double rho, int T) {
  CheckStochasticShape(r, c);
  if (!(rho >= 0.0 && rho <= 1.0)) throw ValidationError("rho outside [0, 1]");
  if (T < 1) throw ValidationError("T must be positive");
  const int K = static_cast<int>(r.size());
  const int d = static_cast<int>(c.size());
  std::vector<double> S;
  for (const auto& row : c) S.insert(S.end(), row.begin(), row.end());
  FixedSolution sol = SolveFixed(r, S, K, d, rho, true);

  OptSolution out;
  out.value = static_cast<double>(T) * sol.value;
  if (sol.value > 0.0) {
    out.stopping_round = T;
    out.fraction = 1.0;
    out.distribution = WithNull(sol.p);
  } else {
    out.distribution.assign(static_cast<std::size_t>(K), 0.0);
    out.distribution[0] = 1.0;
  }
  return out;
}

double ScaledBenchmark(const EnvironmentTrace& trace,
                       std::span<const double> dist, double rho) {
  const ProblemDims& dims = trace.dims();
  ValidateDistribution(dist, dims.K);
  if (!trace.fully_materialized()) {
    throw std::logic_error("benchmark needs a fully materialized trace");
  }
  double total = 0.0;
  for (int t = 1; t <= dims.T; ++t) {
    double cmax = 0.0;
    for (int i = 0; i < dims.d; ++i) {
      cmax = std::max(cmax, MixedConsumption(trace, t, i, dist));
    }
    const double factor = cmax > 0.0 ? std::min(1.0, rho / cmax) : 1.0;
    total += MixedReward(trace, t, dist) * factor;
  }
  return total;
}

double BruteForceOpt(const EnvironmentTrace& trace, double budget,
                     double resolution) {
  if (!trace.fully_materialized()) {
    throw std::logic_error("OPT_FD needs a fully materialized trace");
  }
  const ProblemDims& dims = trace.dims();
  const int K = dims.K, d = dims.d, T = dims.T;
  if (K > 4 && resolution < 0.05) {
    throw ValidationError("brute force grid too large for K > 4");
  }
  const int m = GridSteps(resolution);

  // Prefix sums indexed by T' = 0..T.
  std::vector<double> R(static_cast<std::size_t>(T + 1) * K, 0.0);
  std::vector<double> S(static_cast<std::size_t>(T + 1) * d * K, 0.0);
  for (int t = 1; t <= T; ++t) {
    for (int a = 0; a < K; ++a) {
      R[t * K + a] = R[(t - 1) * K + a] + trace.reward(t, a);
      for (int i = 0; i < d; ++i) {
        S[(t * d + i) * K + a] =
            S[((t - 1) * d + i) * K + a] + trace.consumption(t, i, a);
      }
    }
  }
  const double limit = budget + 1e-12 * std::max(1.0, budget);

  std::vector<double> p(static_cast<std::size_t>(K));
  auto feasible = [&](int t) {
    for (int i = 0; i < d; ++i) {
      double cost = 0.0;
      for (int a = 0; a < K; ++a) cost += p[a] * S[(t * d + i) * K + a];
      if (cost > limit) return false;
    }
    return true;
  };

  double best = 0.0;
  ForEachComposition(K, m, [&](const std::vector<int>& counts) {
    for (int a = 0; a < K; ++a) {
      p[a] = static_cast<double>(counts[a]) / static_cast<double>(m);
    }
    // Cumulative consumption is non-decreasing in T', so the feasible
    // stopping rounds form a prefix; rewards are too, so take the last one.
    int lo = 0, hi = T;
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      if (feasible(mid)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    double value = 0.0;
    for (int a = 0; a < K; ++a) value += p[a] * R[lo * K + a];
    best = std::max(best, value);
  });
  return best;
}

MinmaxCheck MinmaxIdentityCheck(std::span<const double> r,
                                const std::vector<std::vector<double>>& c,
                                double rho, double resolution) {
  CheckStochasticShape(r, c);
  if (!(rho > 0.0 && rho <= 1.0)) throw ValidationError("rho outside (0, 1]");
  const int K = static_cast<int>(r.size());
  const int m = GridSteps(resolution);

  MinmaxCheck out;
  out.lhs = OptFdStochastic(r, c, rho, 1).value;
  out.rhs = -std::numeric_limits<double>::infinity();
  std::vector<double> p(static_cast<std::size_t>(K));
  ForEachComposition(K, m, [&](const std::vector<int>& counts) {
    double reward = 0.0;
    for (int a = 0; a < K; ++a) {
      p[a] = static_cast<double>(counts[a]) / static_cast<double>(m);
      reward += p[a] * r[a];
    }
    double penalty = 0.0;
    for (const auto& row : c) {
      double cost = 0.0;
      for (int a = 0; a < K; ++a) cost += p[a] * row[a];
      penalty = std::min(penalty, (rho - cost) / rho);
    }
    out.rhs = std::max(out.rhs, reward + penalty);
  });
  out.gap = std::abs(out.lhs - out.rhs);
  return out;
}

}  // namespace bwk
