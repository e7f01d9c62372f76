#include "bwk/bounds.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace bwk {
namespace {

TEST(Thm2Alpha, Examples) {
  for (double rho : {0.01, 0.2, 0.5, 1.0}) {
    EXPECT_EQ(Thm2Alpha(rho, 1.0, 1.0), 1.0);
    EXPECT_EQ(Thm2Alpha(rho, 0.0, 0.0), rho);
  }
  EXPECT_NEAR(Thm2Alpha(0.01, 0.8, 0.5), 0.402, 1e-15);
  EXPECT_EQ(Thm2Alpha(0.3, 0.9, 0.2), 0.3);
}

TEST(Thm5Alpha, Examples) {
  for (int d : {1, 3}) {
    EXPECT_LE(Thm5Alpha(0.2, 1.0, 1.0, d).alpha, 1.0 + 1e-12);
  }
  for (double rho : {0.01, 0.1, 0.5}) {
    EXPECT_NEAR(Thm5Alpha(rho, 0.0, 0.7, 1).alpha, rho, 1e-12);
  }
  const Thm5Result r = Thm5Alpha(0.04, 0.8, 0.04, 1);
  EXPECT_NEAR(r.alpha, 0.256, 1e-6);
  EXPECT_NEAR(r.x_argmin, 0.2 / 0.8, 1e-3);
  EXPECT_GE(r.x_argmin, 0.04);
  EXPECT_LE(r.x_argmin, 1.0);
}

TEST(Thm5Alpha, ObjectiveAtKnownPoints) {
  // x = 1: max{rho, sigma_c, sigma_r / (d + 1)} + 0.
  EXPECT_DOUBLE_EQ(Thm5Objective(0.1, 0.6, 0.2, 1, 1.0), 0.3);
  EXPECT_DOUBLE_EQ(Thm5Objective(0.1, 0.6, 0.2, 2, 1.0), 0.2);
  // x = 0.5, rho = 0.1, sigma_r = 0.6, sigma_c = 0.2, d = 1:
  // max{0.1, 0.1, 0.2} + max{0.06, 0.06} = 0.26.
  EXPECT_NEAR(Thm5Objective(0.1, 0.6, 0.2, 1, 0.5), 0.26, 1e-15);
}

TEST(Thm5Alpha, NeverBelowTheBestGridValue) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const double rho = 0.01 + 0.9 * u(rng), sr = u(rng), sc = u(rng);
    const int d = 1 + trial % 3;
    const Thm5Result r = Thm5Alpha(rho, sr, sc, d);
    EXPECT_NEAR(Thm5Objective(rho, sr, sc, d, r.x_argmin), r.alpha, 1e-15);
    double best = 10.0;
    for (int k = 0; k <= 20000; ++k) {
      const double x = rho + (1.0 - rho) * k / 20000.0;
      best = std::min(best, Thm5Objective(rho, sr, sc, d, x));
    }
    EXPECT_LE(r.alpha, best + 1e-12);
    EXPECT_GE(r.alpha, best - 1e-4);
  }
}

TEST(Thm5Alpha, AgreesWithATenTimesFinerGrid) {
  const double pts[][4] = {{0.04, 0.8, 0.04, 1}, {0.1, 0.5, 0.3, 2},
                           {0.01, 0.3, 0.06, 1}, {0.3, 0.9, 0.9, 4}};
  for (const auto& p : pts) {
    const int d = static_cast<int>(p[3]);
    EXPECT_NEAR(Thm5Alpha(p[0], p[1], p[2], d).alpha,
                Thm5Alpha(p[0], p[1], p[2], d, 1000000).alpha, 1e-6);
  }
}

TEST(Thm5AlphaClosedRemark, Examples) {
  EXPECT_NEAR(Thm5AlphaClosedRemark(0.01, 1.0), 0.18, 1e-15);
  for (double rho : {0.01, 0.04, 0.2}) {
    const double s = std::sqrt(rho);
    EXPECT_NEAR(Thm5AlphaClosedRemark(rho, s), 2 * rho - 2 * std::pow(rho, 1.5),
                1e-15);
    EXPECT_NEAR(Thm5AlphaClosedRemark(rho, s * (1 + 1e-9)),
                Thm5AlphaClosedRemark(rho, s * (1 - 1e-9)), 1e-8);
  }
}

TEST(Thm5AlphaClosedRemark, MatchesNumericMinimumInItsRegime) {
  const double rho = 0.04, sc = 0.02;
  for (int k = 1; k <= 100; ++k) {
    const double sr = k / 100.0;
    if (sr < 2 * rho) continue;
    EXPECT_NEAR(Thm5Alpha(rho, sr, sc, 1).alpha, Thm5AlphaClosedRemark(rho, sr),
                1e-4)
        << "sigma_r " << sr;
  }
}

TEST(Thm5AlphaClosedRemark, NumericMinimumIsRhoJustAboveRho) {
  // For rho <= sigma_r < 2 rho the stationary point lies beyond x = 1, so
  // the minimum is rho rather than the closed form's value.
  const double rho = 0.04;
  for (double sr : {0.04, 0.05, 0.07}) {
    EXPECT_NEAR(Thm5Alpha(rho, sr, 0.02, 1).alpha, rho, 1e-9);
    EXPECT_LT(Thm5AlphaClosedRemark(rho, sr), rho);
  }
}

TEST(Thm4Upper, Examples) {
  for (double rho : {0.01, 0.3}) {
    for (double sc : {0.0, 0.5, 1.0}) EXPECT_EQ(Thm4Upper(rho, 0.0, sc), rho);
  }
  for (double sc : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(Thm4Upper(0.04, 0.04, sc), 0.0784, 1e-15);
  }
  // sigma_c = 0 keeps the middle branch.
  EXPECT_NEAR(Thm4Upper(0.1, 0.9, 0.0), 2 * std::sqrt(0.09) - 0.09, 1e-15);
}

TEST(Thm4Upper, ContinuousAtBreakpoints) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double rho = 0.01 + 0.3 * u(rng);
    const double sc = std::sqrt(rho) + (1 - std::sqrt(rho)) * u(rng);
    const double k2 = rho / (sc * sc);  // second breakpoint, <= 1
    const double middle = 2 * std::sqrt(k2 * rho) - k2 * rho;
    const double third = k2 * sc + rho * (1 / sc - k2);
    EXPECT_NEAR(middle, third, 1e-12);
    EXPECT_NEAR(Thm4Upper(rho, k2 * (1 - 1e-10), sc),
                Thm4Upper(rho, k2 * (1 + 1e-10), sc), 1e-9);
    EXPECT_NEAR(Thm4Upper(rho, rho * (1 - 1e-10), sc),
                Thm4Upper(rho, rho * (1 + 1e-10), sc), 1e-9);
  }
}

TEST(Bounds, DominanceAndMonotonicityOnGrid) {
  const int n = 100;
  for (double rho : {0.01, 0.04, 0.1, 0.3}) {
    for (int i = 0; i <= n; ++i) {
      const double sr = static_cast<double>(i) / n;
      for (int j = 0; j <= n; ++j) {
        const double sc = static_cast<double>(j) / n;
        const double t2 = Thm2Alpha(rho, sr, sc);
        const double t4 = Thm4Upper(rho, sr, sc);
        ASSERT_GE(t2, rho);
        ASSERT_LE(t2, 1.0);
        ASSERT_LE(t4, 1.0 + 1e-12);
        ASSERT_LE(t2, t4 + 1e-9) << rho << ' ' << sr << ' ' << sc;
        if (i > 0) {
          const double prev = static_cast<double>(i - 1) / n;
          ASSERT_GE(t2, Thm2Alpha(rho, prev, sc));
          ASSERT_GE(t4, Thm4Upper(rho, prev, sc) - 1e-12);
        }
        if (j > 0) {
          const double prev = static_cast<double>(j - 1) / n;
          ASSERT_GE(t2, Thm2Alpha(rho, sr, prev));
          ASSERT_GE(t4, Thm4Upper(rho, sr, prev) - 1e-12)
              << rho << ' ' << sr << ' ' << sc;
        }
      }
    }
  }
}

TEST(Bounds, Thm5MonotoneOnCoarseGrid) {
  const int n = 20;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      const double sr = static_cast<double>(i) / n;
      const double sc = static_cast<double>(j) / n;
      const double here = Thm5Alpha(0.05, sr, sc, 1, 20000).alpha;
      EXPECT_GE(here, Thm5Alpha(0.05, sr - 1.0 / n, sc, 1, 20000).alpha - 1e-9);
      EXPECT_GE(here, Thm5Alpha(0.05, sr, sc - 1.0 / n, 1, 20000).alpha - 1e-9);
    }
  }
}

TEST(Bounds, WithinFactorTwoOnTheNearTightRegion) {
  for (int a = 1; a <= 20; ++a) {
    const double rho = a / 40.0;
    for (int i = 0; i <= 40; ++i) {
      for (int j = 1; j <= 40; ++j) {
        const double sr = i / 40.0, sc = j / 40.0;
        if (rho > sr * sc * sc) continue;
        EXPECT_LE(Thm4Upper(rho, sr, sc),
                  2 * Thm2Alpha(rho, sr, sc) + rho / sc + 1e-12);
      }
    }
  }
}

TEST(CurveSweep, SinglePointAndOrdering) {
  const std::vector<double> one = {0.5};
  const auto p = CurveSweep(0.04, 0.04, 1, one);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].thm2, Thm2Alpha(0.04, 0.5, 0.04));
  EXPECT_EQ(p[0].thm5, Thm5Alpha(0.04, 0.5, 0.04, 1).alpha);
  EXPECT_EQ(p[0].thm4_upper, Thm4Upper(0.04, 0.5, 0.04));

  const std::vector<double> shuffled = {0.9, 0.1, 0.5, 0.0};
  const auto s = CurveSweep(0.01, 0.006, 1, shuffled);
  for (std::size_t k = 1; k < s.size(); ++k) {
    EXPECT_LT(s[k - 1].sigma_r, s[k].sigma_r);
  }
  for (const GuaranteePoint& g : s) {
    EXPECT_LE(g.thm2, g.thm4_upper + 1e-9);
    EXPECT_GE(g.thm5, g.thm2 - 1e-9);
  }
}

TEST(UnitGrid, Points) {
  EXPECT_EQ(UnitGrid(1), std::vector<double>{0.0});
  EXPECT_EQ(UnitGrid(3), (std::vector<double>{0.0, 0.5, 1.0}));
}

TEST(WriteBoundsCsv, HeaderAndRow) {
  std::ostringstream out;
  const std::vector<GuaranteePoint> p = {{0.5, 1, 1, 1, 1, 1, 1, 1}};
  WriteBoundsCsv(p, out);
  EXPECT_EQ(out.str(),
            "rho,sigma_r,sigma_c,d,thm2,thm5,thm4_upper,x_argmin\n"
            "0.5,1,1,1,1,1,1,1\n");
}

}  // namespace
}  // namespace bwk
