#ifndef BWK_BOUNDS_H_
#define BWK_BOUNDS_H_

// Guaranteed fractions alpha_rho(sigma_r, sigma_c) of OPT_FD, without the
// additive regret terms.

#include <iosfwd>
#include <span>
#include <vector>

namespace bwk {

// rho + sigma_r (sigma_c - rho)^+, for the Lagrangian player.
double Thm2Alpha(double rho, double sigma_r, double sigma_c);

struct Thm5Result {
  double alpha = 0.0;
  double x_argmin = 0.0;
};

// min over x in [rho, 1] of
//   max{rho, x sigma_c, sigma_r x / (d + x)}
//     + max{rho sigma_r (1 - x) / x, sigma_r sigma_c (1 - x)},
// for the restarting player. Grid of `grid_points` then golden-section
// refinement around the best grid cell.
Thm5Result Thm5Alpha(double rho, double sigma_r, double sigma_c, int d,
                     int grid_points = 100000);

// The objective above at a single x.
double Thm5Objective(double rho, double sigma_r, double sigma_c, int d,
                     double x);

// Closed form of Thm5Alpha for d = 1 and sigma_c <= rho:
// 2 sigma_r (sqrt(rho) - rho) if sigma_r^2 >= rho, else
// sigma_r^2 + rho - 2 rho sigma_r. Exact when additionally rho <= 1/4 and
// sigma_r >= 2 rho; for rho <= sigma_r < 2 rho the minimum is rho instead.
double Thm5AlphaClosedRemark(double rho, double sigma_r);

// Upper bound on what any algorithm with alpha(0, 0) >= rho can guarantee.
// sigma_c = 0 keeps the middle branch for every sigma_r > rho.
double Thm4Upper(double rho, double sigma_r, double sigma_c);

struct GuaranteePoint {
  double rho = 0.0;
  double sigma_r = 0.0;
  double sigma_c = 0.0;
  int d = 1;
  double thm2 = 0.0;
  double thm5 = 0.0;
  double thm4_upper = 0.0;
  double x_argmin = 0.0;
};

// n evenly spaced points from 0 to 1 (just 0 when n = 1).
std::vector<double> UnitGrid(int n);

// The three curves over the given sigma_r values, sorted by sigma_r.
std::vector<GuaranteePoint> CurveSweep(double rho, double sigma_c, int d,
                                       std::span<const double> sigma_r_grid);

// `rho,sigma_r,sigma_c,d,thm2,thm5,thm4_upper,x_argmin`.
void WriteBoundsCsv(std::span<const GuaranteePoint> points, std::ostream& out);

}  // namespace bwk

#endif  // BWK_BOUNDS_H_
