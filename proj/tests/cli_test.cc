#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "bwk/csv.h"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result Bwk(const std::string& args) {
  const std::string cmd = std::string(BWK_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string TempPath(const std::string& name) {
  return ::testing::TempDir() + "bwk_cli_" + name;
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

TEST(Cli, BoundsCsvKeepsTheUpperCurveOnTop) {
  for (const char* args : {"--rho 0.01 --sigma-c 0.06", "--rho 0.04 --sigma-c 0.04"}) {
    const Result r = Bwk(std::string("bounds ") + args + " --d 1 --grid 51");
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "rho,sigma_r,sigma_c,d,thm2,thm5,thm4_upper,x_argmin");
    int rows = 0;
    while (std::getline(in, line)) {
      const auto f = bwk::SplitFields(line);
      ASSERT_EQ(f.size(), 8u);
      const double t2 = std::stod(f[4]), t5 = std::stod(f[5]),
                   t4 = std::stod(f[6]);
      EXPECT_GE(t4 + 1e-9, std::max(t2, t5)) << line;
      ++rows;
    }
    EXPECT_EQ(rows, 51);
  }
}

TEST(Cli, RunWritesRunsCsv) {
  const std::string cfg = TempPath("run.cfg");
  const std::string out = TempPath("runs.csv");
  WriteFile(cfg,
            "generator = stochastic\nT = 500\nrho = 0.25\nrewards = 0.8, 0.4\n"
            "consumptions = 0.5, 0.1\nseeds = 3\n");
  const Result r = Bwk("run --config " + cfg + " --out " + out);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ratio mean"), std::string::npos);
  std::ifstream in(out);
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(Cli, SweepOptAndCheck) {
  const std::string cfg = TempPath("sweep.cfg");
  WriteFile(cfg,
            "generator = stochastic\nT = 300\nrho = 0.25\nrewards = 0.8\n"
            "consumptions = 0.5\nseeds = 2\n");
  Result r = Bwk("sweep --config " + cfg + " --param rho --from 0.1 --to 0.2 --steps 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);

  const std::string trace = TempPath("trace.csv");
  WriteFile(trace, "t,action,r,c_1\n1,1,1,1\n2,1,1,1\n3,1,0.5,0.5\n4,1,1,1\n");
  r = Bwk("opt --trace " + trace + " --budget 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "T_star,value,x,p_0,p_1\n2,2,0.5,0,1\n");

  r = Bwk("check --trace " + trace);
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sigma_r 0.5"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(Bwk("").code, 1);
  EXPECT_EQ(Bwk("frobnicate").code, 1);
  EXPECT_EQ(Bwk("run --config /nonexistent.cfg").code, 1);
  const std::string cfg = TempPath("bad.cfg");
  WriteFile(cfg, "generator = stochastic\nT = 10\n");
  EXPECT_EQ(Bwk("run --config " + cfg).code, 1);
  EXPECT_EQ(Bwk("bounds --rho 0.1 --sigma-c 0.1 --grid 3 --out /nonexistent/dir/x.csv").code,
            2);
}

}  // namespace
