#pragma once

#include <cstdint>
#include <string>

#include "coflow/executor.hpp"
#include "coflow/instance.hpp"

namespace coflow {

// Which guarantee applies: instances where every flow is available at
// time zero get the tighter factor.
enum class ReleaseClass { zero, general };

std::string to_string(ReleaseClass rc);

// Worst-case approximation guarantee of the randomized LP scheduler, as a
// function of server count and the size-distribution variability delta
// (the largest squared coefficient of variation).
struct RatioBound {
  double log2_value = 0.0;  // bound with log base 2 (reported default)
  double ln_value = 0.0;    // natural-log variant
};

// zero release:    (2 log m + 1)(1 + sqrt(m) delta)(1 + m delta)(3 + delta)/2
// general release: (2 log m + 1)(1 + sqrt(m) delta)(1 + m delta)(2 + delta)
// Requires m >= 2 and delta >= 0; monotone nondecreasing in both.
RatioBound theoretical_ratio(int m, double delta, ReleaseClass release_class);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double diff = 0.0;
};

// Both sides of sum_r (r + 1/2) tail(r) / mean == (1 + cv^2)/2 * mean.
IdentityCheck start_shift_identity_check(const DiscreteDist& dist);

struct CvSumCheck {
  double cv_sum = 0.0;
  double max_component_cv = 0.0;
  bool ok = false;  // cv of the sum never exceeds the largest component cv
};

CvSumCheck cv_sum_check(const std::vector<DiscreteDist>& dists);

struct EmaxCheck {
  double estimate = 0.0;   // Monte-Carlo E[max of one draw from each dist]
  double std_error = 0.0;
  double bound = 0.0;      // max mean + sqrt(#dists) * max standard deviation
  bool ok = false;         // estimate <= bound + 3 standard errors
};

EmaxCheck emax_bound_check(const std::vector<DiscreteDist>& dists, long samples,
                           std::uint64_t seed);

// Exact minimum of the weighted sum of completion times over every
// non-preemptive feasible schedule. Deterministic sizes only; at most 8
// flows and total size at most 12 (search budget guard). Throws
// std::invalid_argument outside the budget.
double brute_force_opt(const Instance& inst);

struct RatioReport {
  std::string instance_id;
  Policy policy = Policy::npscs;
  ExecutorKind executor = ExecutorKind::barrier;
  int m = 0;
  double delta = 0.0;
  ReleaseClass release_class = ReleaseClass::zero;
  double lp_bound = 0.0;
  double mean_objective = 0.0;
  double std_error = 0.0;
  long trials = 0;
  double ratio = 0.0;        // mean_objective / lp_bound
  double bound_log2 = 0.0;   // 0 when the bound does not apply
  double bound_ln = 0.0;
  bool bound_applies = false;  // guarantee covers the LP scheduler only, m >= 2
  bool exceeds_bound = false;  // ratio > bound_log2 while the bound applies
};

RatioReport ratio_report(const Instance& inst, Policy policy, ExecutorKind executor,
                         long trials, std::uint64_t seed);
// Reuses an already-solved relaxation.
RatioReport ratio_report(const Instance& inst, const LpSolution& sol, Policy policy,
                         ExecutorKind executor, long trials, std::uint64_t seed);

}  // namespace coflow
