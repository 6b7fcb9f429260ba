#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "locc/exact.hpp"

namespace locc {

// Ax = b, x >= 0, optionally maximize objective . x
struct LPProblem {
  std::vector<std::vector<ExactScalar>> A;
  std::vector<ExactScalar> b;
  std::size_t n = 0;
  std::optional<std::vector<ExactScalar>> objective;
};

enum class LPStatus { Infeasible, Optimal, Unbounded };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  std::vector<ExactScalar> x;
  ExactScalar value;
  std::size_t pivots = 0;
};

// Two-phase dense simplex over the rationals with Bland's rule. Rows are first
// reduced to RREF so redundant equalities never reach the tableau.
LPResult lp_solve(const LPProblem& p);

struct Feasibility {
  bool feasible = false;
  std::optional<std::vector<ExactScalar>> point;
};

Feasibility lp_feasible(const LPProblem& p);

struct StrictSolution {
  bool feasible = false;  // Ax = b, x >= 0 has a solution
  ExactScalar t;          // max over solutions of min(1, min_i x_i)
  std::vector<ExactScalar> x;
};

// Maximize t subject to Ax = b, x_i >= t, 0 <= t <= 1.
StrictSolution lp_max_min_slack(const LPProblem& p);

}  // namespace locc
