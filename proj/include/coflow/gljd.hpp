#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

namespace coflow {

// 0/1 matrix with at most one 1 per row and per column.
struct PseudoPermutation {
  Eigen::MatrixXi mat;
  // (row, col) of the ones, ascending by row.
  std::vector<std::pair<int, int>> links() const;
};

// Greedy decomposition of a nonnegative matrix into pseudo-permutations.
// Entries are visited sorted by (value descending, row ascending, column
// ascending); each pass keeps every entry that conflicts with nothing
// already kept in that pass. Together the passes cover each nonzero entry
// exactly once, and the per-pass maxima are nonincreasing.
std::vector<PseudoPermutation> gljd_decompose(const Eigen::MatrixXd& d);

// Sum over passes of the largest covered entry; the expected length of a
// schedule that runs the passes back to back.
double decomposition_cost(const std::vector<PseudoPermutation>& passes,
                          const Eigen::MatrixXd& d);

// Largest row or column sum: the congestion lower bound on any schedule
// of the matrix. Zero for empty matrices.
template <typename Derived>
double efficient_size(const Eigen::MatrixBase<Derived>& d) {
  if (d.rows() == 0 || d.cols() == 0) return 0.0;
  return std::max(d.rowwise().sum().maxCoeff(), d.colwise().sum().maxCoeff());
}

}  // namespace coflow
