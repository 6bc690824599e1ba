#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "coflow/lp_solution.hpp"
#include "coflow/rng.hpp"

namespace coflow {

// Nonzero entries of one start-time distribution, (t, probability).
using YRow = std::vector<std::pair<int, double>>;

// Distribution of the tentative start t + r where t ~ yrow and r has
// P(r) = tail(r) / mean, drawn independently. Dense, indexed from slot 0:
// pmf[s] = sum_t y_t * tail(s - t) / mean.
std::vector<double> tentative_pmf(const YRow& yrow, const DiscreteDist& dist);

// One draw of t + r. yrow must sum to 1 within 1e-6; it is renormalized
// before inversion. Consumes exactly two uniforms: t first, then r.
int sample_tentative_start(const YRow& yrow, const DiscreteDist& dist, Rng& rng);

struct TentativeAssignment {
  std::vector<std::pair<FlowKey, int>> starts;  // sorted by flow key
};

// Samples every flow's tentative start in key order from its own stream
// derived from `seed`.
TentativeAssignment assign_tentative_starts(const Instance& inst, const LpSolution& sol,
                                            std::uint64_t seed);

// Flows sharing a tentative start slot, with their expected-size load
// matrix: D(i-1, j-1) = total mean size of members on link (i, j).
struct GroupMatrix {
  int s = 0;
  Eigen::MatrixXd D;
  std::vector<FlowKey> members;  // sorted by key
};

// Ascending by slot; every flow appears in exactly one group.
std::vector<GroupMatrix> group_by_start(const TentativeAssignment& assignment,
                                        const Instance& inst);

}  // namespace coflow
