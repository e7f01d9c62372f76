#include "bwk/bounds.h"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "bwk/csv.h"
#include "bwk/errors.h"

namespace bwk {
namespace {

void CheckUnitInputs(double rho, double sigma_r, double sigma_c) {
  if (!(rho >= 0.0 && rho <= 1.0 && sigma_r >= 0.0 && sigma_r <= 1.0 &&
        sigma_c >= 0.0 && sigma_c <= 1.0)) {
    throw ValidationError("rho, sigma_r and sigma_c must lie in [0, 1]");
  }
}

}  // namespace

double Thm2Alpha(double rho, double sigma_r, double sigma_c) {
  CheckUnitInputs(rho, sigma_r, sigma_c);
  return rho + sigma_r * std::max(sigma_c - rho, 0.0);
}

double Thm5Objective(double rho, double sigma_r, double sigma_c, int d,
                     double x) {
  const double dd = d;
  const double head = std::max({rho, x * sigma_c, sigma_r * x / (dd + x)});
  const double tail = std::max(rho * sigma_r * (1.0 - x) / x,
                               sigma_r * sigma_c * (1.0 - x));
  return head + tail;
}

Thm5Result Thm5Alpha(double rho, double sigma_r, double sigma_c, int d,
                     int grid_points) {
  CheckUnitInputs(rho, sigma_r, sigma_c);
  if (!(rho > 0.0)) throw ValidationError("rho must be positive");
  if (d < 1) throw ValidationError("d must be at least 1");
  if (grid_points < 2) throw ValidationError("need at least 2 grid points");
  auto f = [&](double x) {
    return Thm5Objective(rho, sigma_r, sigma_c, d, x);
  };
  if (rho == 1.0) return {f(1.0), 1.0};

  const double step = (1.0 - rho) / static_cast<double>(grid_points - 1);
  auto grid_x = [&](int k) {
    return k == grid_points - 1 ? 1.0 : rho + step * k;
  };
  int best_k = 0;
  double best = f(rho);
  for (int k = 1; k < grid_points; ++k) {
    const double v = f(grid_x(k));
    if (v < best) {
      best = v;
      best_k = k;
    }
  }
  Thm5Result out{best, grid_x(best_k)};

  // Golden-section search on the two cells around the best grid point.
  double lo = grid_x(std::max(best_k - 1, 0));
  double hi = grid_x(std::min(best_k + 1, grid_points - 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
  double fa = f(a), fb = f(b);
  for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    }
  }
  for (double x : {a, b, 0.5 * (lo + hi)}) {
    const double v = f(x);
    if (v < out.alpha) out = {v, x};
  }
  return out;
}

double Thm5AlphaClosedRemark(double rho, double sigma_r) {
  if (!(rho > 0.0 && rho <= 1.0 && sigma_r > 0.0 && sigma_r <= 1.0)) {
    throw ValidationError("rho and sigma_r must lie in (0, 1]");
  }
  if (sigma_r * sigma_r >= rho) return 2.0 * sigma_r * (std::sqrt(rho) - rho);
  return sigma_r * sigma_r + rho - 2.0 * rho * sigma_r;
}

double Thm4Upper(double rho, double sigma_r, double sigma_c) {
  CheckUnitInputs(rho, sigma_r, sigma_c);
  if (!(rho > 0.0)) throw ValidationError("rho must be positive");
  if (sigma_r <= rho) return sigma_r + rho * (1.0 - sigma_r);
  if (sigma_c == 0.0 || sigma_r <= rho / (sigma_c * sigma_c)) {
    return 2.0 * std::sqrt(sigma_r * rho) - sigma_r * rho;
  }
  return sigma_r * sigma_c + rho * (1.0 / sigma_c - sigma_r);
}

std::vector<double> UnitGrid(int n) {
  if (n < 1) throw ValidationError("grid needs at least one point");
  std::vector<double> grid(static_cast<std::size_t>(n), 0.0);
  for (int k = 1; k < n; ++k) {
    grid[k] = k == n - 1 ? 1.0
                         : static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return grid;
}

std::vector<GuaranteePoint> CurveSweep(double rho, double sigma_c, int d,
                                       std::span<const double> sigma_r_grid) {
  std::vector<double> grid(sigma_r_grid.begin(), sigma_r_grid.end());
  std::sort(grid.begin(), grid.end());
  std::vector<GuaranteePoint> points;
  points.reserve(grid.size());
  for (double sr : grid) {
    GuaranteePoint p;
    p.rho = rho;
    p.sigma_r = sr;
    p.sigma_c = sigma_c;
    p.d = d;
    p.thm2 = Thm2Alpha(rho, sr, sigma_c);
    const Thm5Result t5 = Thm5Alpha(rho, sr, sigma_c, d);
    p.thm5 = t5.alpha;
    p.x_argmin = t5.x_argmin;
    p.thm4_upper = Thm4Upper(rho, sr, sigma_c);
    points.push_back(p);
  }
  return points;
}

void WriteBoundsCsv(std::span<const GuaranteePoint> points, std::ostream& out) {
  out << "rho,sigma_r,sigma_c,d,thm2,thm5,thm4_upper,x_argmin\n";
  for (const GuaranteePoint& p : points) {
    out << FormatDouble(p.rho) << ',' << FormatDouble(p.sigma_r) << ','
        << FormatDouble(p.sigma_c) << ',' << p.d << ',' << FormatDouble(p.thm2)
        << ',' << FormatDouble(p.thm5) << ',' << FormatDouble(p.thm4_upper)
        << ',' << FormatDouble(p.x_argmin) << '\n';
  }
}

}  // namespace bwk
