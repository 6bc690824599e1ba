#include "coflow/fixtures.hpp"

#include <algorithm>

namespace coflow {

namespace {

// (source, sink, task, size at x100 scale)
struct Row {
  int i, j, k, size;
};

constexpr Row kSaturated4Flows[] = {
    {1, 1, 1, 38}, {2, 1, 3, 11}, {4, 1, 1, 20}, {4, 1, 3, 31}, {1, 4, 1, 40},
    {2, 4, 1, 5},  {3, 4, 2, 33}, {2, 2, 2, 24}, {3, 2, 1, 19}, {3, 2, 2, 31},
    {3, 2, 3, 3},  {4, 2, 2, 23}, {4, 4, 1, 22}, {1, 3, 2, 22}, {2, 3, 1, 20},
    {2, 3, 2, 20}, {2, 3, 3, 20}, {3, 3, 3, 14}, {4, 3, 3, 4},
};

Instance from_rows(int m, int tasks, const Row* rows, std::size_t count,
                   const std::string& name) {
  Instance inst;
  inst.m = m;
  inst.metadata["name"] = name;
  for (int k = 1; k <= tasks; ++k) inst.tasks.push_back({k, 1.0, {}});
  for (std::size_t r = 0; r < count; ++r) {
    FlowSpec flow;
    flow.source = rows[r].i;
    flow.sink = rows[r].j;
    flow.dist = DiscreteDist::deterministic(rows[r].size);
    inst.tasks[static_cast<std::size_t>(rows[r].k - 1)].flows.push_back(std::move(flow));
  }
  for (auto& task : inst.tasks)
    std::sort(task.flows.begin(), task.flows.end(), [](const auto& a, const auto& b) {
      return std::pair{a.source, a.sink} < std::pair{b.source, b.sink};
    });
  return inst;
}

}  // namespace

Instance fixture_saturated4() {
  return from_rows(4, 3, kSaturated4Flows, std::size(kSaturated4Flows), "saturated4");
}

Eigen::MatrixXd fixture_saturated4_load() {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
  for (const Row& row : kSaturated4Flows) d(row.i - 1, row.j - 1) += row.size / 100.0;
  return d;
}

Instance fixture_small5() {
  static constexpr Row flows[] = {
      {1, 1, 1, 1}, {2, 4, 1, 1}, {4, 3, 1, 1}, {1, 1, 2, 1}, {2, 2, 2, 1},
      {5, 5, 2, 1}, {2, 1, 3, 1}, {2, 2, 3, 1}, {3, 4, 3, 1}, {5, 1, 3, 1},
  };
  return from_rows(5, 3, flows, std::size(flows), "small5");
}

}  // namespace coflow
