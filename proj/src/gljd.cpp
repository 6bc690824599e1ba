#include "coflow/gljd.hpp"

#include <stdexcept>
#include <tuple>

namespace coflow {

std::vector<std::pair<int, int>> PseudoPermutation::links() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < mat.rows(); ++r)
    for (int c = 0; c < mat.cols(); ++c)
      if (mat(r, c) != 0) out.emplace_back(r, c);
  return out;
}

std::vector<PseudoPermutation> gljd_decompose(const Eigen::MatrixXd& d) {
  struct Entry {
    double value;
    int row;
    int col;
  };
  std::vector<Entry> remaining;
  for (int r = 0; r < d.rows(); ++r) {
    for (int c = 0; c < d.cols(); ++c) {
      if (d(r, c) < 0.0) throw std::invalid_argument("gljd_decompose: negative entry");
      if (d(r, c) > 0.0) remaining.push_back({d(r, c), r, c});
    }
  }
  std::sort(remaining.begin(), remaining.end(), [](const Entry& a, const Entry& b) {
    return std::tuple{-a.value, a.row, a.col} < std::tuple{-b.value, b.row, b.col};
  });

  std::vector<PseudoPermutation> passes;
  std::vector<char> row_used(static_cast<std::size_t>(d.rows()));
  std::vector<char> col_used(static_cast<std::size_t>(d.cols()));
  while (!remaining.empty()) {
    std::fill(row_used.begin(), row_used.end(), 0);
    std::fill(col_used.begin(), col_used.end(), 0);
    PseudoPermutation pass;
    pass.mat = Eigen::MatrixXi::Zero(d.rows(), d.cols());
    std::vector<Entry> leftover;
    for (const Entry& e : remaining) {
      if (row_used[static_cast<std::size_t>(e.row)] || col_used[static_cast<std::size_t>(e.col)]) {
        leftover.push_back(e);
        continue;
      }
      row_used[static_cast<std::size_t>(e.row)] = 1;
      col_used[static_cast<std::size_t>(e.col)] = 1;
      pass.mat(e.row, e.col) = 1;
    }
    remaining = std::move(leftover);
    passes.push_back(std::move(pass));
  }
  return passes;
}

double decomposition_cost(const std::vector<PseudoPermutation>& passes,
                          const Eigen::MatrixXd& d) {
  double cost = 0.0;
  for (const auto& pass : passes) {
    double pass_max = 0.0;
    for (const auto& [r, c] : pass.links()) pass_max = std::max(pass_max, d(r, c));
    cost += pass_max;
  }
  return cost;
}

}  // namespace coflow
