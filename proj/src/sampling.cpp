#include "coflow/sampling.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace coflow {

std::vector<double> tentative_pmf(const YRow& yrow, const DiscreteDist& dist) {
  if (yrow.empty()) throw std::invalid_argument("tentative_pmf: empty start row");
  const int last_t = yrow.back().first;
  std::vector<double> pmf(static_cast<std::size_t>(last_t + dist.max_size()), 0.0);
  for (const auto& [t, p] : yrow) {
    for (int r = 0; r < dist.max_size(); ++r) {
      const double tail = dist.tail(r);
      if (tail <= 0.0) break;
      pmf[static_cast<std::size_t>(t + r)] += p * tail / dist.mean();
    }
  }
  return pmf;
}

int sample_tentative_start(const YRow& yrow, const DiscreteDist& dist, Rng& rng) {
  if (yrow.empty()) throw std::invalid_argument("sample_tentative_start: empty start row");
  double total = 0.0;
  for (const auto& [t, p] : yrow) {
    if (p < 0.0) throw std::invalid_argument("sample_tentative_start: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-6)
    throw std::invalid_argument("sample_tentative_start: start row must sum to 1");

  std::vector<double> tw;
  tw.reserve(yrow.size());
  for (const auto& [t, p] : yrow) tw.push_back(p);
  const int t = yrow[rng.sample_index(tw)].first;

  std::vector<double> rw(static_cast<std::size_t>(dist.max_size()));
  for (int r = 0; r < dist.max_size(); ++r) rw[static_cast<std::size_t>(r)] = dist.tail(r);
  const int r = static_cast<int>(rng.sample_index(rw));
  return t + r;
}

TentativeAssignment assign_tentative_starts(const Instance& inst, const LpSolution& sol,
                                            std::uint64_t seed) {
  Rng rng(derive_seed(seed, /*stream=*/1, 0));
  TentativeAssignment assignment;
  for (const auto& [key, flow] : inst.all_flows()) {
    auto it = sol.y.find(key);
    if (it == sol.y.end() || it->second.empty())
      throw std::logic_error("assign_tentative_starts: solution does not cover instance");
    assignment.starts.emplace_back(key, sample_tentative_start(it->second, flow->dist, rng));
  }
  return assignment;
}

std::vector<GroupMatrix> group_by_start(const TentativeAssignment& assignment,
                                        const Instance& inst) {
  std::map<int, GroupMatrix> by_slot;
  for (const auto& [key, s] : assignment.starts) {
    auto [it, inserted] = by_slot.try_emplace(s);
    if (inserted) {
      it->second.s = s;
      it->second.D = Eigen::MatrixXd::Zero(inst.m, inst.m);
    }
    const FlowSpec* flow = inst.find_flow(key);
    if (flow == nullptr) throw std::logic_error("group_by_start: unknown flow");
    it->second.D(key.source - 1, key.sink - 1) += flow->dist.mean();
    it->second.members.push_back(key);
  }
  std::vector<GroupMatrix> groups;
  groups.reserve(by_slot.size());
  for (auto& [s, group] : by_slot) groups.push_back(std::move(group));
  return groups;
}

}  // namespace coflow
