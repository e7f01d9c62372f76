#ifndef BWK_LEARNERS_H_
#define BWK_LEARNERS_H_

// No-regret primitives. Both learners take payoffs already scaled to [0, 1]
// and keep their weights in the log domain, so long horizons neither
// overflow nor underflow them.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace bwk {

// Hedge / multiplicative weights over n experts with full-information losses.
class Hedge {
 public:
  Hedge(int n, double eta);

  // Starts from the given positive (unnormalized) weights.
  static Hedge FromWeights(std::span<const double> weights, double eta);

  // Fixed-horizon rate sqrt(8 ln n / T).
  static double TunedEta(int n, int horizon);

  int size() const { return static_cast<int>(log_weights_.size()); }
  double eta() const { return eta_; }

  // Weights rescaled so that the largest is 1.
  std::vector<double> Weights() const;
  std::vector<double> Distribution() const;

  // w_a <- w_a * exp(-eta * loss_a). Losses must lie in [0, 1].
  void Update(std::span<const double> losses);

  int Sample(std::mt19937_64& rng) const;

 private:
  std::vector<double> log_weights_;
  double eta_;
};

struct Exp3PParams {
  double gamma = 1.0;  // exploration rate in (0, 1]
  double eta = 0.1;    // learning rate
  double beta = 0.0;   // optimism bias (confidence parameter folded in)
};

// EXP3.P for bandit feedback with gains in [0, 1].
class Exp3P {
 public:
  Exp3P(int k, Exp3PParams params);
  static Exp3P FromWeights(std::span<const double> weights,
                           Exp3PParams params);

  // beta = sqrt(ln(k/delta)/(k T)), gamma = min{1, 1.05 sqrt(k ln k / T)},
  // eta = 0.95 sqrt(ln k / (k T)).
  static Exp3PParams Tuned(int k, int horizon, double delta);

  int size() const { return static_cast<int>(log_weights_.size()); }
  const Exp3PParams& params() const { return params_; }

  std::vector<double> Weights() const;

  // p_a = (1 - gamma) w_a / sum(w) + gamma / k.
  std::vector<double> Probabilities() const;

  struct Draw {
    int arm;
    double probability;
  };
  Draw Sample(std::mt19937_64& rng) const;

  // Importance-weighted optimistic update: every arm a gets
  // g_a = (reward * [a == arm] + beta) / p_a and w_a <- w_a exp(eta g_a).
  // `probability` is the p_arm returned by Sample.
  void Update(int arm, double reward, double probability);

 private:
  std::vector<double> log_weights_;
  Exp3PParams params_;
};

// Draws an index from a probability vector with a single uniform variate.
int SampleIndex(std::span<const double> probabilities, std::mt19937_64& rng);

// Inputs of the reported high-probability regret budgets.
struct RegretBudget {
  int T = 1;
  double delta = 0.05;
  double scale = 1.0;     // payoff range width, 1 + 1/rho for the Lagrangian
  double constant = 1.0;  // reporting multiplier

  void Validate() const;
};

// constant * (1/rho) * sqrt(K T ln(T K / delta)); with full information the
// factor K under the root is dropped (Hedge over actions).
double RegretBoundMax(const RegretBudget& budget, int K, double rho,
                      bool full_information = false);

// constant * (1/rho) * sqrt(T ln(T d / delta)).
double RegretBoundMin(const RegretBudget& budget, int d, double rho);

}  // namespace bwk

#endif  // BWK_LEARNERS_H_
