#pragma once

#include <cstdint>
#include <string>

#include "coflow/gljd.hpp"
#include "coflow/sampling.hpp"

namespace coflow {

enum class Policy { npscs, fifo, wsept };

std::string to_string(Policy policy);
Policy parse_policy(const std::string& name);

// One unit of the output sequence: flows executed together between
// barriers. Keyed by (s, l): the shared tentative start slot and the
// 1-based decomposition pass for the LP policy; for the baselines s is a
// sequence index and l is 1.
struct FlowGroup {
  int s = 0;
  int l = 0;
  std::vector<FlowKey> members;  // execution order within the group
};

struct Schedule {
  Policy policy = Policy::npscs;
  std::uint64_t seed = 0;  // sampling seed; meaningful for the LP policy only
  std::vector<FlowGroup> groups;
};

// Splits one slot group along the decomposition passes: pass l keeps the
// members whose link carries a 1 in passes[l-1]. Every member lands in
// exactly one pass (passes cover each nonzero link once); members keep
// their (source, sink, task) order.
std::vector<std::vector<FlowKey>> map_groups(const GroupMatrix& group,
                                             const std::vector<PseudoPermutation>& passes);

// The randomized LP policy: sample tentative starts, group by slot,
// decompose each group's load matrix, emit groups in (s, l) order.
Schedule build_schedule(const Instance& inst, const LpSolution& sol, std::uint64_t seed);
Schedule build_schedule(const Instance& inst, const TentativeAssignment& assignment);

// Baselines. FIFO: one group per flow, ordered by (release, task, source,
// sink). WSEPT: one group per task, tasks by descending weight over total
// expected size, ties by ascending id.
Schedule schedule_fifo(const Instance& inst);
Schedule schedule_wsept(const Instance& inst);

}  // namespace coflow
