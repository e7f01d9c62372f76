#include "bwk/lp.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bwk/errors.h"

namespace bwk {
namespace {

constexpr double kPivotEps = 1e-12;

}  // namespace

LpSolution SolvePackingLp(const PackingLp& lp) {
  const int m = lp.rows;
  const int n = lp.cols;
  if (m < 0 || n < 0 || lp.A.size() != static_cast<std::size_t>(m) * n ||
      lp.b.size() != static_cast<std::size_t>(m) ||
      lp.c.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("LP dimensions are inconsistent");
  }
  for (double v : lp.b) {
    if (!(v >= 0.0)) throw ValidationError("LP right-hand side must be >= 0");
  }

  // Tableau columns: n structural, m slack, then the rhs.
  const int width = n + m + 1;
  std::vector<double> tab(static_cast<std::size_t>(m + 1) * width, 0.0);
  auto at = [&](int r, int j) -> double& { return tab[r * width + j]; };
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) at(r, j) = lp.A[r * n + j];
    at(r, n + r) = 1.0;
    at(r, width - 1) = lp.b[r];
    basis[r] = n + r;
  }
  // Objective row holds reduced costs -c; optimal when none is negative.
  for (int j = 0; j < n; ++j) at(m, j) = -lp.c[j];

  while (true) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (at(m, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < m; ++r) {
      const double a = at(r, enter);
      if (a <= kPivotEps) continue;
      const double ratio = at(r, width - 1) / a;
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[r] < basis[leave])) {
        leave = r;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::runtime_error("LP is unbounded");

    const double pivot = at(leave, enter);
    for (int j = 0; j < width; ++j) at(leave, j) /= pivot;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = at(r, enter);
      if (f == 0.0) continue;
      for (int j = 0; j < width; ++j) at(r, j) -= f * at(leave, j);
    }
    basis[leave] = enter;
  }

  LpSolution sol;
  sol.x.assign(static_cast<std::size_t>(n), 0.0);
  for (int r = 0; r < m; ++r) {
    if (basis[r] < n) sol.x[basis[r]] = std::max(at(r, width - 1), 0.0);
  }
  for (int j = 0; j < n; ++j) sol.value += lp.c[j] * sol.x[j];
  return sol;
}

}  // namespace bwk
