#include "bwk/learners.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bwk/csv.h"
#include "bwk/errors.h"
#include "bwk/rng.h"

namespace bwk {
namespace {

std::vector<double> LogOf(std::span<const double> weights) {
  if (weights.empty()) throw ValidationError("need at least one weight");
  double top = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError("weights must be positive and finite");
    }
    top = std::max(top, w);
  }
  // Relative to the largest weight, so a common factor cancels exactly.
  std::vector<double> logs;
  logs.reserve(weights.size());
  for (double w : weights) logs.push_back(std::log(w / top));
  return logs;
}

// Shifts log-weights so the maximum is 0.
void Recenter(std::vector<double>& logs) {
  const double top = *std::max_element(logs.begin(), logs.end());
  for (double& l : logs) l -= top;
}

std::vector<double> Softmax(const std::vector<double>& logs) {
  const double top = *std::max_element(logs.begin(), logs.end());
  std::vector<double> p(logs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    p[i] = std::exp(logs[i] - top);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace

int SampleIndex(std::span<const double> probabilities, std::mt19937_64& rng) {
  const double u = UniformUnit(rng);
  double cumulative = 0.0;
  int last_positive = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    cumulative += probabilities[i];
    last_positive = static_cast<int>(i);
    if (u < cumulative) return last_positive;
  }
  return last_positive;
}

// -- Hedge --------------------------------------------------------------------

Hedge::Hedge(int n, double eta)
    : log_weights_(static_cast<std::size_t>(std::max(n, 0)), 0.0), eta_(eta) {
  if (n < 1) throw ValidationError("Hedge needs at least one expert");
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw ValidationError("Hedge learning rate must be positive");
  }
}

Hedge Hedge::FromWeights(std::span<const double> weights, double eta) {
  Hedge h(static_cast<int>(weights.size()), eta);
  h.log_weights_ = LogOf(weights);
  return h;
}

double Hedge::TunedEta(int n, int horizon) {
  // A single expert has nothing to learn; any positive rate works.
  if (n < 2) return 1.0;
  return std::sqrt(8.0 * std::log(static_cast<double>(n)) /
                   static_cast<double>(std::max(horizon, 1)));
}

std::vector<double> Hedge::Weights() const {
  std::vector<double> w = log_weights_;
  Recenter(w);
  for (double& v : w) v = std::exp(v);
  return w;
}

std::vector<double> Hedge::Distribution() const {
  return Softmax(log_weights_);
}

void Hedge::Update(std::span<const double> losses) {
  if (losses.size() != log_weights_.size()) {
    throw ValidationError("Hedge loss vector has the wrong length");
  }
  for (double loss : losses) {
    if (!(loss >= 0.0 && loss <= 1.0)) {
      throw ValidationError("Hedge loss " + FormatDouble(loss) +
                            " outside [0, 1]");
    }
  }
  for (std::size_t i = 0; i < losses.size(); ++i) {
    log_weights_[i] -= eta_ * losses[i];
  }
  Recenter(log_weights_);
}

int Hedge::Sample(std::mt19937_64& rng) const {
  return SampleIndex(Distribution(), rng);
}

// -- Exp3P --------------------------------------------------------------------

Exp3P::Exp3P(int k, Exp3PParams params)
    : log_weights_(static_cast<std::size_t>(std::max(k, 0)), 0.0),
      params_(params) {
  if (k < 1) throw ValidationError("EXP3.P needs at least one arm");
  if (!(params.gamma > 0.0 && params.gamma <= 1.0)) {
    throw ValidationError("EXP3.P gamma must lie in (0, 1]");
  }
  if (!(params.eta > 0.0) || !std::isfinite(params.eta)) {
    throw ValidationError("EXP3.P eta must be positive");
  }
  if (!(params.beta >= 0.0) || !std::isfinite(params.beta)) {
    throw ValidationError("EXP3.P beta must be non-negative");
  }
}

Exp3P Exp3P::FromWeights(std::span<const double> weights, Exp3PParams params) {
  Exp3P e(static_cast<int>(weights.size()), params);
  e.log_weights_ = LogOf(weights);
  return e;
}

Exp3PParams Exp3P::Tuned(int k, int horizon, double delta) {
  const double kk = static_cast<double>(k);
  const double t = static_cast<double>(std::max(horizon, 1));
  Exp3PParams p;
  p.beta = std::sqrt(std::log(kk / delta) / (kk * t));
  if (k < 2) {
    p.gamma = 1.0;
    p.eta = 1.0;
    return p;
  }
  p.gamma = std::min(1.0, 1.05 * std::sqrt(kk * std::log(kk) / t));
  p.eta = 0.95 * std::sqrt(std::log(kk) / (kk * t));
  return p;
}

std::vector<double> Exp3P::Weights() const {
  std::vector<double> w = log_weights_;
  Recenter(w);
  for (double& v : w) v = std::exp(v);
  return w;
}

std::vector<double> Exp3P::Probabilities() const {
  std::vector<double> p = Softmax(log_weights_);
  const double k = static_cast<double>(p.size());
  for (double& v : p) v = (1.0 - params_.gamma) * v + params_.gamma / k;
  return p;
}

Exp3P::Draw Exp3P::Sample(std::mt19937_64& rng) const {
  const std::vector<double> p = Probabilities();
  const int arm = SampleIndex(p, rng);
  return {arm, p[arm]};
}

void Exp3P::Update(int arm, double reward, double probability) {
  if (arm < 0 || arm >= size()) throw ValidationError("arm out of range");
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw ValidationError("EXP3.P reward " + FormatDouble(reward) +
                          " outside [0, 1]");
  }
  if (!(probability > 0.0 && probability <= 1.0)) {
    throw ValidationError("EXP3.P probability must lie in (0, 1]");
  }
  const std::vector<double> p = Probabilities();
  for (int a = 0; a < size(); ++a) {
    const double pa = a == arm ? probability : p[a];
    const double gain = ((a == arm ? reward : 0.0) + params_.beta) / pa;
    log_weights_[a] += params_.eta * gain;
  }
  Recenter(log_weights_);
}

// -- Regret budgets -----------------------------------------------------------

void RegretBudget::Validate() const {
  if (T < 1) throw ValidationError("regret horizon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("delta must lie in (0, 1)");
  }
  if (!(scale >= 1.0)) throw ValidationError("payoff scale must be >= 1");
  if (!(constant >= 0.0)) throw ValidationError("constant must be >= 0");
}

double RegretBoundMax(const RegretBudget& budget, int K, double rho,
                      bool full_information) {
  budget.Validate();
  if (K < 1 || !(rho > 0.0)) throw ValidationError("need K >= 1, rho > 0");
  const double t = budget.T;
  const double k = K;
  const double arms = full_information ? 1.0 : k;
  return budget.constant / rho *
         std::sqrt(arms * t * std::log(t * k / budget.delta));
}

double RegretBoundMin(const RegretBudget& budget, int d, double rho) {
  budget.Validate();
  if (d < 1 || !(rho > 0.0)) throw ValidationError("need d >= 1, rho > 0");
  const double t = budget.T;
  return budget.constant / rho *
         std::sqrt(t * std::log(t * static_cast<double>(d) / budget.delta));
}

}  // namespace bwk
