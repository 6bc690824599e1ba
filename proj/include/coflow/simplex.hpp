#pragma once

#include <utility>
#include <vector>

namespace coflow {

// Minimize cost^T x subject to A x (<=|=) rhs, x >= 0, rhs >= 0.
// Columns are sparse; rows are referenced by index.
struct SparseLp {
  struct Col {
    std::vector<std::pair<int, double>> a;  // (row, coefficient), rows ascending
    double cost = 0.0;
  };
  int num_rows = 0;
  std::vector<double> rhs;
  std::vector<char> sense;  // '<' or '='
  std::vector<Col> cols;
};

enum class SimplexStatus { optimal, infeasible, unbounded, iteration_limit, numerical_error };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::numerical_error;
  std::vector<double> x;  // structural variables only
  double objective = 0.0;
  long iterations = 0;
  // Optimal basis, one entry per row: values below cols.size() are structural
  // columns, cols.size() + r is the unit column of row r. Set on optimal.
  std::vector<int> basis;
  // Row duals at the optimum (simplex multipliers). Set on optimal.
  std::vector<double> duals;
};

struct SimplexOptions {
  double tol = 1e-9;
  long max_iterations = 500000;
  int refactor_every = 512;
};

// Two-phase revised simplex with a dense basis inverse. Devex pricing with a
// Harris ratio test, falling back to Bland's rule during degenerate stalls so
// cycling cannot occur. Artificials are added only for equality rows.
SimplexResult solve_simplex(const SparseLp& lp, const SimplexOptions& opts = {});

// Re-solve after appending rows to a previously solved LP. `start_basis` is
// the basis of the previous optimum; the new rows' slacks complete it. That
// basis stays dual feasible, so dual simplex repairs the primal infeasibility
// the new rows introduce, typically in far fewer pivots than a cold solve.
// Any trouble on the warm path falls back to a cold solve.
SimplexResult solve_simplex_warm(const SparseLp& lp, const std::vector<int>& start_basis,
                                 const SimplexOptions& opts = {});

}  // namespace coflow
