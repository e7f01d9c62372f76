#ifndef BWK_BENCHMARK_H_
#define BWK_BENCHMARK_H_

// OPT_FD: the best fixed distribution over actions, played until its expected
// consumption would exceed the budget, measured on expected payoffs.

#include <span>
#include <vector>

#include "bwk/env.h"

namespace bwk {

struct OptSolution {
  int stopping_round = 0;            // T*
  std::vector<double> distribution;  // A*, length K, null action included
  double value = 0.0;                // OPT_FD
  double fraction = 0.0;             // x = T* / T
};

// Sweeps T' = 1..T and solves, for each, max_p sum_a p(a) S_r(T', a) subject
// to sum_a p(a) S_{c,i}(T', a) <= budget for all i, with S the prefix sums of
// expectations. Ties go to the smallest T'. With no positive reward anywhere
// the result is T* = 0 and the point mass on the null action.
OptSolution OptFd(const EnvironmentTrace& trace, double budget);

// Same, forcing the general simplex path even when d = 1.
OptSolution OptFdSimplex(const EnvironmentTrace& trace, double budget);

// Time-constant expectations: r has K entries (null included), c is d rows of
// K entries. Value is T max{<p, r> : c p <= rho, p in simplex}.
OptSolution OptFdStochastic(std::span<const double> r,
                            const std::vector<std::vector<double>>& c,
                            double rho, int T);

// sum_t E_A[r_t] min{1, rho / max_i E_A[c_{t,i}]}, with min{1, rho/0} = 1.
double ScaledBenchmark(const EnvironmentTrace& trace,
                       std::span<const double> dist, double rho);

// Grid search over the simplex with step `resolution` (1/resolution must be
// close to an integer) and over all T'. Only for tiny K; rejects K > 4 when
// resolution < 0.05.
double BruteForceOpt(const EnvironmentTrace& trace, double budget,
                     double resolution);

struct MinmaxCheck {
  double lhs = 0.0;  // OPT_FD / T
  double rhs = 0.0;  // grid max over p of min over lambda in D
  double gap = 0.0;  // |lhs - rhs|
};

// For time-constant expectations, compares OPT_FD / T with
// max_p min_{lambda >= 0, sum lambda <= 1/rho} E_p[r + sum_i lambda_i (rho -
// c_i)], the outer max taken over a simplex grid of step `resolution`. The
// inner min is attained at lambda = 0 or lambda = e_i / rho.
MinmaxCheck MinmaxIdentityCheck(std::span<const double> r,
                                const std::vector<std::vector<double>>& c,
                                double rho, double resolution);

}  // namespace bwk

#endif  // BWK_BENCHMARK_H_
