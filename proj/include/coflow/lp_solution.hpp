#pragma once

#include <map>
#include <stdexcept>

#include "coflow/lp_model.hpp"

namespace coflow {

// Optimal fractional start-time distribution. y rows hold only nonzero
// entries, (t, probability) with t ascending; each row sums to 1 within
// solver tolerance.
struct LpSolution {
  int horizon = 0;
  double objective = 0.0;
  std::map<FlowKey, std::vector<std::pair<int, double>>> y;
  std::map<FlowKey, double> c_flow;  // expected flow completion
  std::map<int, double> c_task;      // task id -> completion variable
  long simplex_iterations = 0;
  int rounds = 0;       // constraint-generation rounds
  int active_rows = 0;  // rows in the final working LP
  int model_rows = 0;   // rows in the full model
};

class SolveError : public std::runtime_error {
 public:
  enum class Kind { infeasible, numerical };
  SolveError(Kind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
  Kind kind;
};

// Solves the time-indexed relaxation. Capacity rows are activated lazily:
// solve with assignment + completion rows, add the capacity rows the
// solution violates, repeat until clean, then verify every model row at
// 1e-7. Throws SolveError on infeasibility or numerical failure.
LpSolution solve_relaxation(const Instance& inst, int horizon);
// Horizon from compute_horizon, at which the relaxation value equals the
// unrestricted one.
LpSolution solve_relaxation(const Instance& inst);

// Objective of the relaxation; a lower bound on the optimal expected
// weighted completion time.
double lp_lower_bound(const Instance& inst);

}  // namespace coflow
