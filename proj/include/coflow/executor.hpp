#pragma once

#include <map>

#include "coflow/schedule.hpp"

namespace coflow {

enum class ExecutorKind { barrier, list };

std::string to_string(ExecutorKind kind);
ExecutorKind parse_executor(const std::string& name);

// One sampled size per flow.
struct Realization {
  std::map<FlowKey, int> sizes;
};

// Independent draw for every flow, in key order, from a stream derived
// from `seed`.
Realization realize_sizes(const Instance& inst, std::uint64_t seed);

// Occupies [start, start + size) on the flow's source and sink ports.
struct FlowInterval {
  int start = 0;
  int end = 0;
};

struct SimResult {
  std::map<FlowKey, FlowInterval> intervals;
  std::map<int, int> c_task;  // completion = end of the task's last flow
  double objective = 0.0;     // weighted sum of task completions
  int makespan = 0;
};

// Barrier semantics: groups run strictly in order; a group begins at
// max(previous group's end, its members' releases); inside a group each
// flow takes the earliest slot with both ports free, in member order, so
// flows sharing a link run back to back while disjoint links proceed in
// parallel; the next group waits for the whole group to drain.
SimResult execute_barrier(const Instance& inst, const Schedule& schedule,
                          const Realization& real);

// List semantics: flows in flattened group order, each placed at the
// earliest feasible slot >= its release on both ports (gaps are reused).
SimResult execute_list(const Instance& inst, const Schedule& schedule, const Realization& real);

double weighted_completion(const Instance& inst, const std::map<int, int>& c_task);

// Feasibility audit: intervals match realized sizes, respect releases,
// never double-book a source or sink port, and the completions/objective
// are consistent. Empty result means the execution is valid.
std::vector<std::string> check_sim_result(const Instance& inst, const Realization& real,
                                          const SimResult& result);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long trials = 0;
  std::map<int, double> task_mean;
};

// Sequential Monte-Carlo over `trials` runs. Trial i uses schedule seed
// derive_seed(seed, i, 0) and size seed derive_seed(seed, i, 1), so results
// are reproducible and independent of evaluation order. For the LP policy
// the relaxation is solved once (or pass `presolved`); baselines build
// their schedule once and only resample sizes.
McEstimate monte_carlo_eval(const Instance& inst, Policy policy, ExecutorKind executor,
                            long trials, std::uint64_t seed,
                            const LpSolution* presolved = nullptr);

}  // namespace coflow
