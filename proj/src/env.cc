#include "bwk/env.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "bwk/csv.h"
#include "bwk/errors.h"
#include "bwk/rng.h"

namespace bwk {
namespace {

void CheckUnit(double value, const char* what) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ValidationError(std::string(what) + " " + FormatDouble(value) +
                          " is outside [0, 1]");
  }
}

}  // namespace

void ProblemDims::Validate() const {
  if (T < 1 || K < 1 || d < 1) {
    throw ValidationError("T, K and d must all be at least 1");
  }
  if (!(B >= 0.0 && B <= static_cast<double>(T))) {
    throw ValidationError("budget must lie in [0, T]");
  }
}

void History::Append(RoundRecord record) {
  records_.push_back(std::move(record));
}

EnvironmentTrace::EnvironmentTrace(ProblemDims dims, Realization realization)
    : dims_(dims), realization_(realization), materialized_(dims.T) {
  dims_.Validate();
  rewards_.assign(static_cast<std::size_t>(dims_.T) * dims_.K, 0.0);
  consumptions_.assign(
      static_cast<std::size_t>(dims_.T) * dims_.d * dims_.K, 0.0);
}

EnvironmentTrace EnvironmentTrace::Adaptive(ProblemDims dims,
                                            Realization realization,
                                            AdaptivityHook hook) {
  if (!hook) throw ConfigError("adaptive trace needs a hook");
  EnvironmentTrace trace(dims, realization);
  trace.hook_ = std::move(hook);
  trace.materialized_ = 0;
  return trace;
}

void EnvironmentTrace::CheckRound(int t) const {
  if (t < 1 || t > dims_.T) {
    throw std::out_of_range("round " + std::to_string(t) +
                            " outside [1, " + std::to_string(dims_.T) + "]");
  }
}

RoundExpectations EnvironmentTrace::Round(int t) const {
  CheckRound(t);
  RoundExpectations row;
  const auto k = static_cast<std::size_t>(dims_.K);
  const auto r0 = rewards_.begin() + Offset(t) * k;
  row.rewards.assign(r0, r0 + k);
  const auto c0 = consumptions_.begin() + Offset(t) * dims_.d * k;
  row.consumptions.assign(c0, c0 + dims_.d * k);
  return row;
}

void EnvironmentTrace::SetReward(int t, int a, double value) {
  if (adaptive()) throw ConfigError("cannot overwrite an adaptive trace");
  CheckRound(t);
  if (a < 0 || a >= dims_.K) throw std::out_of_range("action out of range");
  CheckUnit(value, "reward");
  if (a == 0 && value != 0.0) {
    throw ValidationError("the null action must have zero reward");
  }
  rewards_[Offset(t) * dims_.K + a] = value;
}

void EnvironmentTrace::SetConsumption(int t, int i, int a, double value) {
  if (adaptive()) throw ConfigError("cannot overwrite an adaptive trace");
  CheckRound(t);
  if (a < 0 || a >= dims_.K) throw std::out_of_range("action out of range");
  if (i < 0 || i >= dims_.d) throw std::out_of_range("resource out of range");
  CheckUnit(value, "consumption");
  if (a == 0 && value != 0.0) {
    throw ValidationError("the null action must have zero consumption");
  }
  consumptions_[(Offset(t) * dims_.d + i) * dims_.K + a] = value;
}

void EnvironmentTrace::WriteRound(int t, const RoundExpectations& row) {
  const auto k = static_cast<std::size_t>(dims_.K);
  if (row.rewards.size() != k || row.consumptions.size() != dims_.d * k) {
    throw ValidationError("adaptivity hook returned a row of the wrong shape");
  }
  for (std::size_t a = 0; a < k; ++a) {
    CheckUnit(row.rewards[a], "reward");
    rewards_[Offset(t) * k + a] = a == 0 ? 0.0 : row.rewards[a];
  }
  for (std::size_t j = 0; j < row.consumptions.size(); ++j) {
    CheckUnit(row.consumptions[j], "consumption");
    consumptions_[Offset(t) * dims_.d * k + j] =
        j % k == 0 ? 0.0 : row.consumptions[j];
  }
}

void EnvironmentTrace::MaterializeThrough(int t, const History& history) {
  CheckRound(t);
  while (materialized_ < t) {
    const int next = materialized_ + 1;
    WriteRound(next, hook_(history, next));
    materialized_ = next;
  }
}

void RealizeRound(EnvironmentTrace& trace, const History& history, int t,
                  int action, std::uint64_t seed, double& reward,
                  std::span<double> consumption) {
  const ProblemDims& dims = trace.dims();
  if (t < 1 || t > dims.T) throw std::out_of_range("round out of range");
  if (action < 0 || action >= dims.K) {
    throw std::out_of_range("action " + std::to_string(action) +
                            " out of range");
  }
  if (consumption.size() != static_cast<std::size_t>(dims.d)) {
    throw std::invalid_argument("consumption buffer has the wrong size");
  }
  trace.MaterializeThrough(t, history);

  const bool bernoulli = trace.realization() == Realization::kBernoulli;
  auto realize = [&](double mean, std::uint64_t entry) {
    if (!bernoulli) return mean;
    return CounterUniform(seed, static_cast<std::uint64_t>(t),
                          static_cast<std::uint64_t>(action), entry) < mean
               ? 1.0
               : 0.0;
  };
  reward = realize(trace.reward(t, action), 0);
  for (int i = 0; i < dims.d; ++i) {
    consumption[i] = realize(trace.consumption(t, i, action),
                             static_cast<std::uint64_t>(i) + 1);
  }
}

SampledRound SampleRound(EnvironmentTrace& trace, const History& history,
                         int t, int action, std::uint64_t seed) {
  SampledRound out;
  out.consumption.assign(static_cast<std::size_t>(trace.dims().d), 0.0);
  RealizeRound(trace, history, t, action, seed, out.reward, out.consumption);
  out.expected = trace.Round(t);
  return out;
}

StationarityParams MeasureStationarity(const EnvironmentTrace& trace) {
  if (!trace.fully_materialized()) {
    throw std::logic_error("stationarity needs a fully materialized trace");
  }
  const ProblemDims& dims = trace.dims();
  StationarityParams out;
  auto ratio = [&](auto value_at) {
    double lo = value_at(1), hi = lo;
    for (int t = 2; t <= dims.T; ++t) {
      const double v = value_at(t);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi > 0.0 ? lo / hi : 1.0;
  };
  for (int a = 0; a < dims.K; ++a) {
    out.sigma_r = std::min(
        out.sigma_r, ratio([&](int t) { return trace.reward(t, a); }));
    for (int i = 0; i < dims.d; ++i) {
      out.sigma_c = std::min(
          out.sigma_c,
          ratio([&](int t) { return trace.consumption(t, i, a); }));
    }
  }
  return out;
}

void ValidateDistribution(std::span<const double> dist, int size) {
  if (dist.size() != static_cast<std::size_t>(size)) {
    throw ValidationError("distribution has " + std::to_string(dist.size()) +
                          " entries, expected " + std::to_string(size));
  }
  double total = 0.0;
  for (double p : dist) {
    if (!(p >= 0.0)) throw ValidationError("negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("probabilities sum to " + FormatDouble(total));
  }
}

double MixedReward(const EnvironmentTrace& trace, int t,
                   std::span<const double> dist) {
  double v = 0.0;
  for (int a = 0; a < trace.dims().K; ++a) v += dist[a] * trace.reward(t, a);
  return v;
}

double MixedConsumption(const EnvironmentTrace& trace, int t, int i,
                        std::span<const double> dist) {
  double v = 0.0;
  for (int a = 0; a < trace.dims().K; ++a) {
    v += dist[a] * trace.consumption(t, i, a);
  }
  return v;
}

double ConsumptionVariation(const EnvironmentTrace& trace,
                            std::span<const double> dist) {
  const ProblemDims& dims = trace.dims();
  ValidateDistribution(dist, dims.K);
  if (!trace.fully_materialized()) {
    throw std::logic_error("variation needs a fully materialized trace");
  }
  double total = 0.0;
  for (int t = 1; t < dims.T; ++t) {
    double worst = 0.0;
    for (int i = 0; i < dims.d; ++i) {
      double diff = 0.0;
      for (int a = 0; a < dims.K; ++a) {
        diff += dist[a] *
                (trace.consumption(t, i, a) - trace.consumption(t + 1, i, a));
      }
      worst = std::max(worst, std::abs(diff));
    }
    total += worst;
  }
  return total;
}

void WriteTraceCsv(const EnvironmentTrace& trace, std::ostream& out) {
  const ProblemDims& dims = trace.dims();
  out << "t,action,r";
  for (int i = 1; i <= dims.d; ++i) out << ",c_" << i;
  out << '\n';
  for (int t = 1; t <= dims.T; ++t) {
    for (int a = 1; a < dims.K; ++a) {
      out << t << ',' << a << ',' << FormatDouble(trace.reward(t, a));
      for (int i = 0; i < dims.d; ++i) {
        out << ',' << FormatDouble(trace.consumption(t, i, a));
      }
      out << '\n';
    }
  }
}

EnvironmentTrace ReadTraceCsv(std::istream& in, double budget,
                              Realization realization) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty trace file");
  const auto header = SplitFields(Trim(line));
  if (header.size() < 4 || header[0] != "t" || header[1] != "action" ||
      header[2] != "r") {
    throw ValidationError("trace header must be t,action,r,c_1,...,c_d");
  }
  const int d = static_cast<int>(header.size()) - 3;
  for (int i = 1; i <= d; ++i) {
    if (header[2 + i] != "c_" + std::to_string(i)) {
      throw ValidationError("unexpected trace column '" + header[2 + i] + "'");
    }
  }

  struct Row {
    int t, a;
    std::vector<double> values;
  };
  std::vector<Row> rows;
  int T = 0, K = 1;
  while (std::getline(in, line)) {
    const auto trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const auto fields = SplitFields(trimmed);
    if (fields.size() != header.size()) {
      throw ValidationError("trace row has " + std::to_string(fields.size()) +
                            " fields, expected " +
                            std::to_string(header.size()));
    }
    Row row;
    row.t = static_cast<int>(ParseInt(fields[0], "t"));
    row.a = static_cast<int>(ParseInt(fields[1], "action"));
    if (row.t < 1 || row.a < 0) {
      throw ValidationError("trace rounds are 1-based and actions >= 0");
    }
    for (std::size_t j = 2; j < fields.size(); ++j) {
      row.values.push_back(ParseDouble(fields[j], header[j]));
    }
    T = std::max(T, row.t);
    K = std::max(K, row.a + 1);
    rows.push_back(std::move(row));
  }
  if (T == 0) throw ValidationError("trace has no rows");

  EnvironmentTrace trace({T, K, d, budget}, realization);
  for (const Row& row : rows) {
    trace.SetReward(row.t, row.a, row.values[0]);
    for (int i = 0; i < d; ++i) {
      trace.SetConsumption(row.t, i, row.a, row.values[1 + i]);
    }
  }
  return trace;
}

}  // namespace bwk
