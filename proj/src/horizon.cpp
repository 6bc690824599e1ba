#include "coflow/horizon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coflow {

Horizon compute_horizon(const Instance& inst) {
  if (inst.num_flows() == 0) throw std::invalid_argument("compute_horizon: instance has no flows");

  double sum_means = 0.0;
  double max_mean = 0.0;
  for (const auto& task : inst.tasks) {
    for (const auto& flow : task.flows) {
      sum_means += flow.dist.mean();
      max_mean = std::max(max_mean, flow.dist.mean());
    }
  }

  const double mn = static_cast<double>(inst.m) * static_cast<double>(inst.tasks.size());
  Horizon h;
  h.F1 = mn * (inst.max_release() + sum_means);
  h.F2 = 2.0 * mn * max_mean;
  h.F = static_cast<int>(std::ceil(2.0 * h.F1 + h.F2));
  return h;
}

}  // namespace coflow
