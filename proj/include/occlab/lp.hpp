#pragma once

#include <vector>

#include "occlab/linalg.hpp"

namespace occlab {

// Equality-form linear program: min objective . x  s.t.  a x = rhs, x >= 0.
struct LpProblem {
  Vec objective;
  Mat a;    // dense; rows = constraints, cols = variables
  Vec rhs;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// A basic optimal solution. When status is Optimal the certificates hold:
// ||a x - rhs||_inf <= 1e-9, all reduced costs >= -1e-9, and
// x >= -1e-12 componentwise. redundant_rows lists equality rows detected as
// linearly dependent during phase I (their artificials stayed basic at a
// level <= 1e-10 and could not be pivoted out).
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vec x;
  double objective = 0.0;
  std::vector<int> basis;
  int iterations = 0;
  std::vector<int> redundant_rows;
};

// Two-phase revised simplex with a dense, explicitly maintained basis
// inverse (full re-factorization every 64 pivots). Entering rule is
// most-negative reduced cost, switching to Bland's smallest-index rule after
// 50 consecutive degenerate pivots so that cycling cannot occur.
LpSolution solve_lp(const LpProblem& p);

}  // namespace occlab
