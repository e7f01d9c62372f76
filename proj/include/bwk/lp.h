#ifndef BWK_LP_H_
#define BWK_LP_H_

#include <vector>

namespace bwk {

// max c.x  s.t.  A x <= b, x >= 0, with b >= 0 (the origin is feasible).
// A is row-major, rows x cols.
struct PackingLp {
  int rows = 0;
  int cols = 0;
  std::vector<double> A;
  std::vector<double> b;
  std::vector<double> c;
};

struct LpSolution {
  std::vector<double> x;
  double value = 0.0;
};

// Dense tableau simplex with Bland's rule. Throws ValidationError for a
// malformed problem or negative b, std::runtime_error if unbounded.
LpSolution SolvePackingLp(const PackingLp& lp);

}  // namespace bwk

#endif  // BWK_LP_H_
