#include "coflow/executor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coflow {

std::string to_string(ExecutorKind kind) {
  return kind == ExecutorKind::barrier ? "barrier" : "list";
}

ExecutorKind parse_executor(const std::string& name) {
  if (name == "barrier") return ExecutorKind::barrier;
  if (name == "list") return ExecutorKind::list;
  throw std::invalid_argument("unknown executor: " + name);
}

Realization realize_sizes(const Instance& inst, std::uint64_t seed) {
  Rng rng(derive_seed(seed, /*stream=*/2, 0));
  Realization real;
  for (const auto& [key, flow] : inst.all_flows()) {
    const auto& pmf = flow->dist.pmf();
    std::vector<double> weights;
    weights.reserve(pmf.size());
    for (const auto& [size, p] : pmf) weights.push_back(p);
    real.sizes[key] = pmf[rng.sample_index(weights)].first;
  }
  return real;
}

namespace {

void finalize(const Instance& inst, SimResult& result) {
  for (const auto& task : inst.tasks) {
    int completion = 0;
    for (const auto& flow : task.flows) {
      const FlowKey key{flow.source, flow.sink, task.id};
      completion = std::max(completion, result.intervals.at(key).end);
    }
    result.c_task[task.id] = completion;
    result.makespan = std::max(result.makespan, completion);
  }
  result.objective = weighted_completion(inst, result.c_task);
}

int flow_release(const Instance& inst, const FlowKey& key) {
  const FlowSpec* flow = inst.find_flow(key);
  if (flow == nullptr) throw std::logic_error("executor: flow not in instance");
  return flow->release;
}

// Busy intervals per port, kept sorted; first-fit scans for the earliest
// gap wide enough on both ports.
class PortTimeline {
 public:
  // Ports 1..m are sources, m+1..2m sinks.
  explicit PortTimeline(int m) : busy_(2 * static_cast<std::size_t>(m) + 1) {}

  int next_conflict_end(int port, int start, int end) const {
    int bump = -1;
    for (const auto& [a, b] : busy_[static_cast<std::size_t>(port)])
      if (a < end && start < b) bump = std::max(bump, b);
    return bump;
  }

  void occupy(int port, int start, int end) {
    auto& list = busy_[static_cast<std::size_t>(port)];
    list.emplace_back(start, end);
    std::sort(list.begin(), list.end());
  }

 private:
  std::vector<std::vector<std::pair<int, int>>> busy_;
};

}  // namespace

SimResult execute_barrier(const Instance& inst, const Schedule& schedule,
                          const Realization& real) {
  SimResult result;
  std::vector<int> src_free(static_cast<std::size_t>(inst.m) + 1, 0);
  std::vector<int> snk_free(static_cast<std::size_t>(inst.m) + 1, 0);
  int prev_end = 0;
  for (const FlowGroup& group : schedule.groups) {
    int base = prev_end;
    for (const FlowKey& key : group.members)
      base = std::max(base, flow_release(inst, key));
    std::fill(src_free.begin(), src_free.end(), base);
    std::fill(snk_free.begin(), snk_free.end(), base);
    int group_end = base;
    for (const FlowKey& key : group.members) {
      const int size = real.sizes.at(key);
      const int start = std::max(src_free[static_cast<std::size_t>(key.source)],
                                 snk_free[static_cast<std::size_t>(key.sink)]);
      const int end = start + size;
      src_free[static_cast<std::size_t>(key.source)] = end;
      snk_free[static_cast<std::size_t>(key.sink)] = end;
      result.intervals[key] = {start, end};
      group_end = std::max(group_end, end);
    }
    prev_end = group_end;
  }
  finalize(inst, result);
  return result;
}

SimResult execute_list(const Instance& inst, const Schedule& schedule, const Realization& real) {
  SimResult result;
  PortTimeline timeline(inst.m);
  for (const FlowGroup& group : schedule.groups) {
    for (const FlowKey& key : group.members) {
      const int size = real.sizes.at(key);
      int start = flow_release(inst, key);
      while (true) {
        const int bump_src = timeline.next_conflict_end(key.source, start, start + size);
        const int bump_snk = timeline.next_conflict_end(key.sink + inst.m, start, start + size);
        const int bump = std::max(bump_src, bump_snk);
        if (bump < 0) break;
        start = bump;
      }
      timeline.occupy(key.source, start, start + size);
      timeline.occupy(key.sink + inst.m, start, start + size);
      result.intervals[key] = {start, start + size};
    }
  }
  finalize(inst, result);
  return result;
}

double weighted_completion(const Instance& inst, const std::map<int, int>& c_task) {
  double total = 0.0;
  for (const auto& task : inst.tasks) total += task.weight * c_task.at(task.id);
  return total;
}

std::vector<std::string> check_sim_result(const Instance& inst, const Realization& real,
                                          const SimResult& result) {
  std::vector<std::string> issues;
  auto key_str = [](const FlowKey& key) {
    return "(" + std::to_string(key.source) + "," + std::to_string(key.sink) + "," +
           std::to_string(key.task) + ")";
  };

  std::vector<std::vector<std::pair<int, int>>> src(static_cast<std::size_t>(inst.m) + 1);
  auto snk = src;
  for (const auto& task : inst.tasks) {
    for (const auto& flow : task.flows) {
      const FlowKey key{flow.source, flow.sink, task.id};
      auto it = result.intervals.find(key);
      if (it == result.intervals.end()) {
        issues.push_back("flow " + key_str(key) + " was never scheduled");
        continue;
      }
      const auto& [start, end] = it->second;
      if (end - start != real.sizes.at(key))
        issues.push_back("flow " + key_str(key) + " ran for " + std::to_string(end - start) +
                         " slots, realized size is " + std::to_string(real.sizes.at(key)));
      if (start < flow.release)
        issues.push_back("flow " + key_str(key) + " started before its release");
      src[static_cast<std::size_t>(flow.source)].emplace_back(start, end);
      snk[static_cast<std::size_t>(flow.sink)].emplace_back(start, end);
    }
  }

  auto check_port = [&issues](std::vector<std::pair<int, int>>& intervals, const std::string& label,
                              int port) {
    std::sort(intervals.begin(), intervals.end());
    for (std::size_t i = 1; i < intervals.size(); ++i)
      if (intervals[i].first < intervals[i - 1].second)
        issues.push_back(label + " port " + std::to_string(port) + " is double-booked at slot " +
                         std::to_string(intervals[i].first));
  };
  for (int p = 1; p <= inst.m; ++p) {
    check_port(src[static_cast<std::size_t>(p)], "source", p);
    check_port(snk[static_cast<std::size_t>(p)], "sink", p);
  }

  for (const auto& task : inst.tasks) {
    int completion = 0;
    bool all_present = true;
    for (const auto& flow : task.flows) {
      auto it = result.intervals.find({flow.source, flow.sink, task.id});
      if (it == result.intervals.end()) {
        all_present = false;
        break;
      }
      completion = std::max(completion, it->second.end);
    }
    if (!all_present) continue;
    auto it = result.c_task.find(task.id);
    if (it == result.c_task.end() || it->second != completion)
      issues.push_back("task " + std::to_string(task.id) + " completion mismatch");
  }
  if (std::abs(result.objective - weighted_completion(inst, result.c_task)) > 1e-9)
    issues.push_back("objective does not match the completions");
  return issues;
}

McEstimate monte_carlo_eval(const Instance& inst, Policy policy, ExecutorKind executor,
                            long trials, std::uint64_t seed, const LpSolution* presolved) {
  if (trials < 1) throw std::invalid_argument("monte_carlo_eval: trials must be >= 1");

  LpSolution local;
  if (policy == Policy::npscs && presolved == nullptr) {
    local = solve_relaxation(inst);
    presolved = &local;
  }
  Schedule baseline;
  if (policy == Policy::fifo) baseline = schedule_fifo(inst);
  if (policy == Policy::wsept) baseline = schedule_wsept(inst);

  McEstimate est;
  est.trials = trials;
  for (const auto& task : inst.tasks) est.task_mean[task.id] = 0.0;

  double mean = 0.0;
  double m2 = 0.0;
  Schedule trial_schedule;
  for (long i = 0; i < trials; ++i) {
    if (policy == Policy::npscs)
      trial_schedule =
          build_schedule(inst, *presolved, derive_seed(seed, static_cast<std::uint64_t>(i), 0));
    const Schedule& schedule = policy == Policy::npscs ? trial_schedule : baseline;
    const Realization real = realize_sizes(inst, derive_seed(seed, static_cast<std::uint64_t>(i), 1));
    const SimResult result = executor == ExecutorKind::barrier
                                 ? execute_barrier(inst, schedule, real)
                                 : execute_list(inst, schedule, real);
    const double x = result.objective;
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
    for (const auto& [task, completion] : result.c_task)
      est.task_mean[task] += static_cast<double>(completion);
  }
  est.mean = mean;
  est.std_error =
      trials > 1 ? std::sqrt(m2 / (static_cast<double>(trials) * static_cast<double>(trials - 1)))
                 : 0.0;
  for (auto& [task, total] : est.task_mean) total /= static_cast<double>(trials);
  return est;
}

}  // namespace coflow
