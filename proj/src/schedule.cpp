#include "coflow/schedule.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace coflow {

std::string to_string(Policy policy) {
  switch (policy) {
    case Policy::npscs: return "npscs";
    case Policy::fifo: return "fifo";
    case Policy::wsept: return "wsept";
  }
  return "?";
}

Policy parse_policy(const std::string& name) {
  if (name == "npscs") return Policy::npscs;
  if (name == "fifo") return Policy::fifo;
  if (name == "wsept") return Policy::wsept;
  throw std::invalid_argument("unknown policy: " + name);
}

std::vector<std::vector<FlowKey>> map_groups(const GroupMatrix& group,
                                             const std::vector<PseudoPermutation>& passes) {
  std::vector<std::vector<FlowKey>> out;
  out.reserve(passes.size());
  for (const auto& pass : passes) {
    std::set<std::pair<int, int>> selected;
    for (const auto& [r, c] : pass.links()) selected.insert({r + 1, c + 1});
    // group.members is (source, sink, task) sorted; filtering preserves it.
    std::vector<FlowKey> members;
    for (const FlowKey& key : group.members)
      if (selected.count({key.source, key.sink})) members.push_back(key);
    out.push_back(std::move(members));
  }
  return out;
}

Schedule build_schedule(const Instance& inst, const TentativeAssignment& assignment) {
  Schedule schedule;
  schedule.policy = Policy::npscs;
  for (const GroupMatrix& group : group_by_start(assignment, inst)) {
    const auto passes = gljd_decompose(group.D);
    const auto split = map_groups(group, passes);
    for (std::size_t l = 0; l < split.size(); ++l) {
      if (split[l].empty()) continue;
      FlowGroup fg;
      fg.s = group.s;
      fg.l = static_cast<int>(l) + 1;
      fg.members = split[l];
      schedule.groups.push_back(std::move(fg));
    }
  }
  return schedule;
}

Schedule build_schedule(const Instance& inst, const LpSolution& sol, std::uint64_t seed) {
  Schedule schedule = build_schedule(inst, assign_tentative_starts(inst, sol, seed));
  schedule.seed = seed;
  return schedule;
}

Schedule schedule_fifo(const Instance& inst) {
  struct Item {
    int release;
    FlowKey key;
  };
  std::vector<Item> items;
  for (const auto& [key, flow] : inst.all_flows()) items.push_back({flow->release, key});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::tuple{a.release, a.key.task, a.key.source, a.key.sink} <
           std::tuple{b.release, b.key.task, b.key.source, b.key.sink};
  });
  Schedule schedule;
  schedule.policy = Policy::fifo;
  for (std::size_t i = 0; i < items.size(); ++i)
    schedule.groups.push_back({static_cast<int>(i), 1, {items[i].key}});
  return schedule;
}

Schedule schedule_wsept(const Instance& inst) {
  struct Ranked {
    double rate;  // weight per unit of total expected size
    int id;
  };
  std::vector<Ranked> order;
  for (const auto& task : inst.tasks) {
    double total = 0.0;
    for (const auto& flow : task.flows) total += flow.dist.mean();
    order.push_back({total > 0.0 ? task.weight / total : 0.0, task.id});
  }
  std::sort(order.begin(), order.end(), [](const Ranked& a, const Ranked& b) {
    if (a.rate != b.rate) return a.rate > b.rate;
    return a.id < b.id;
  });

  Schedule schedule;
  schedule.policy = Policy::wsept;
  int rank = 0;
  for (const Ranked& r : order) {
    const auto& task = inst.tasks[static_cast<std::size_t>(r.id - 1)];
    if (task.flows.empty()) continue;
    FlowGroup fg;
    fg.s = rank++;
    fg.l = 1;
    for (const auto& flow : task.flows) fg.members.push_back({flow.source, flow.sink, task.id});
    std::sort(fg.members.begin(), fg.members.end());
    schedule.groups.push_back(std::move(fg));
  }
  return schedule;
}

}  // namespace coflow
