// bwk: command-line front end of the BwK simulation library.
//
//   bwk run    --config FILE [--out runs.csv]
//   bwk sweep  --config FILE --param NAME --from A --to B --steps N [--out F]
//   bwk bounds --rho R --sigma-c S [--d D] [--grid N] [--out bounds.csv]
//   bwk opt    --trace FILE --budget B
//   bwk check  --trace FILE
//
// Exit status: 0 on success, 1 on invalid input, 2 on runtime failure.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bwk/benchmark.h"
#include "bwk/bounds.h"
#include "bwk/config.h"
#include "bwk/csv.h"
#include "bwk/env.h"
#include "bwk/errors.h"
#include "bwk/harness.h"

namespace {

constexpr int kInvalidInput = 1;
constexpr int kRuntimeFailure = 2;

// Writes to `path`, or to stdout when it is empty.
template <typename Fn>
void WithOutput(const std::string& path, Fn&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write(out);
}

void ReportFlags(const std::vector<bwk::RunRecord>& records) {
  for (const bwk::RunRecord& r : records) {
    for (const std::string& flag : r.flags) {
      std::cerr << "run " << r.run_id << " (seed " << r.seed << "): " << flag
                << '\n';
    }
  }
}

void EmitRecords(const std::vector<bwk::RunRecord>& records,
                 const std::string& path) {
  ReportFlags(records);
  WithOutput(path, [&](std::ostream& out) { bwk::WriteRunsCsv(records, out); });
  if (!path.empty()) bwk::WriteSummary(bwk::Summarize(records), std::cout);
}

bwk::EnvironmentTrace LoadTrace(const std::string& path, double budget) {
  std::ifstream in(path);
  if (!in) throw bwk::ValidationError("cannot open trace '" + path + "'");
  return bwk::ReadTraceCsv(in, budget);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bandits with knapsacks simulation laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_path, trace_path, param;
  double from = 0.0, to = 0.0, rho = 0.0, sigma_c = 0.0, budget = 0.0;
  int steps = 1, d = 1, grid = 101;

  auto* run = app.add_subcommand("run", "Run a seeded experiment");
  run->add_option("--config", config_path, "Experiment config file")
      ->required();
  run->add_option("--out", out_path, "runs.csv path (overrides the config)");

  auto* sweep = app.add_subcommand("sweep", "Run an experiment per value");
  sweep->add_option("--config", config_path, "Experiment config file")
      ->required();
  sweep->add_option("--param", param, "Config key to vary")->required();
  sweep->add_option("--from", from, "First value")->required();
  sweep->add_option("--to", to, "Last value")->required();
  sweep->add_option("--steps", steps, "Number of values")->required();
  sweep->add_option("--out", out_path, "runs.csv path");

  auto* bounds = app.add_subcommand("bounds", "Guarantee curves over sigma_r");
  bounds->add_option("--rho", rho, "Per-round budget")->required();
  bounds->add_option("--sigma-c", sigma_c, "Consumption stationarity")
      ->required();
  bounds->add_option("--d", d, "Number of resources");
  bounds->add_option("--grid", grid, "Number of sigma_r values");
  bounds->add_option("--out", out_path, "bounds.csv path");

  auto* opt = app.add_subcommand("opt", "OPT_FD of a trace");
  opt->add_option("--trace", trace_path, "Trace CSV")->required();
  opt->add_option("--budget", budget, "Per-resource budget")->required();
  opt->add_option("--out", out_path, "Output CSV path");

  auto* check = app.add_subcommand("check", "Stationarity report of a trace");
  check->add_option("--trace", trace_path, "Trace CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalidInput;
  }

  try {
    if (run->parsed()) {
      bwk::ExperimentConfig cfg =
          bwk::ParseExperimentConfig(bwk::ReadConfigFile(config_path));
      if (!out_path.empty()) cfg.out = out_path;
      EmitRecords(bwk::RunExperiment(cfg), cfg.out);
    } else if (sweep->parsed()) {
      const bwk::ConfigMap base = bwk::ReadConfigFile(config_path);
      if (out_path.empty() && base.count("out")) out_path = base.at("out");
      EmitRecords(bwk::RunSweep(base, param, from, to, steps), out_path);
    } else if (bounds->parsed()) {
      const auto points = bwk::CurveSweep(rho, sigma_c, d, bwk::UnitGrid(grid));
      WithOutput(out_path,
                 [&](std::ostream& out) { bwk::WriteBoundsCsv(points, out); });
    } else if (opt->parsed()) {
      const bwk::EnvironmentTrace trace = LoadTrace(trace_path, budget);
      const bwk::OptSolution sol = bwk::OptFd(trace, budget);
      WithOutput(out_path, [&](std::ostream& out) {
        out << "T_star,value,x";
        for (std::size_t a = 0; a < sol.distribution.size(); ++a) {
          out << ",p_" << a;
        }
        out << '\n'
            << sol.stopping_round << ',' << bwk::FormatDouble(sol.value) << ','
            << bwk::FormatDouble(sol.fraction);
        for (double p : sol.distribution) out << ',' << bwk::FormatDouble(p);
        out << '\n';
      });
    } else if (check->parsed()) {
      const bwk::EnvironmentTrace trace = LoadTrace(trace_path, 0.0);
      const bwk::StationarityParams s = bwk::MeasureStationarity(trace);
      const bwk::ProblemDims& dims = trace.dims();
      std::cout << "T " << dims.T << "  K " << dims.K << "  d " << dims.d
                << "\nsigma_r " << bwk::FormatDouble(s.sigma_r) << "\nsigma_c "
                << bwk::FormatDouble(s.sigma_c) << '\n';
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "bwk: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "bwk: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return 0;
}
