#include "coflow/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "coflow/rng.hpp"

namespace coflow {

std::string to_string(ReleaseClass rc) {
  return rc == ReleaseClass::zero ? "zero" : "general";
}

RatioBound theoretical_ratio(int m, double delta, ReleaseClass release_class) {
  if (m < 2) throw std::invalid_argument("theoretical_ratio: needs m >= 2");
  if (delta < 0.0) throw std::invalid_argument("theoretical_ratio: delta must be >= 0");
  const double md = static_cast<double>(m);
  const double shared = (1.0 + std::sqrt(md) * delta) * (1.0 + md * delta);
  const double tail_factor =
      release_class == ReleaseClass::zero ? (3.0 + delta) / 2.0 : (2.0 + delta);
  RatioBound bound;
  bound.log2_value = (2.0 * std::log2(md) + 1.0) * shared * tail_factor;
  bound.ln_value = (2.0 * std::log(md) + 1.0) * shared * tail_factor;
  return bound;
}

IdentityCheck start_shift_identity_check(const DiscreteDist& dist) {
  IdentityCheck check;
  for (int r = 0; r < dist.max_size(); ++r)
    check.lhs += (r + 0.5) * dist.tail(r) / dist.mean();
  check.rhs = (1.0 + dist.cv_squared()) / 2.0 * dist.mean();
  check.diff = std::abs(check.lhs - check.rhs);
  return check;
}

CvSumCheck cv_sum_check(const std::vector<DiscreteDist>& dists) {
  if (dists.empty()) throw std::invalid_argument("cv_sum_check: needs at least one dist");
  double mean_sum = 0.0;
  double var_sum = 0.0;
  CvSumCheck check;
  for (const auto& dist : dists) {
    const double var = dist.second_moment() - dist.mean() * dist.mean();
    mean_sum += dist.mean();
    var_sum += std::max(0.0, var);
    check.max_component_cv =
        std::max(check.max_component_cv, std::sqrt(std::max(0.0, var)) / dist.mean());
  }
  check.cv_sum = std::sqrt(var_sum) / mean_sum;
  check.ok = check.cv_sum <= check.max_component_cv + 1e-12;
  return check;
}

EmaxCheck emax_bound_check(const std::vector<DiscreteDist>& dists, long samples,
                           std::uint64_t seed) {
  if (dists.empty()) throw std::invalid_argument("emax_bound_check: needs at least one dist");
  if (samples < 10000) throw std::invalid_argument("emax_bound_check: needs samples >= 10^4");

  EmaxCheck check;
  double max_sigma = 0.0;
  for (const auto& dist : dists) {
    check.bound = std::max(check.bound, dist.mean());
    const double var = std::max(0.0, dist.second_moment() - dist.mean() * dist.mean());
    max_sigma = std::max(max_sigma, std::sqrt(var));
  }
  check.bound += std::sqrt(static_cast<double>(dists.size())) * max_sigma;

  std::vector<std::vector<double>> weights;
  for (const auto& dist : dists) {
    std::vector<double> w;
    for (const auto& [size, p] : dist.pmf()) w.push_back(p);
    weights.push_back(std::move(w));
  }

  Rng rng(derive_seed(seed, /*stream=*/3, 0));
  double mean = 0.0;
  double m2 = 0.0;
  for (long i = 0; i < samples; ++i) {
    int largest = 0;
    for (std::size_t d = 0; d < dists.size(); ++d) {
      const auto& pmf = dists[d].pmf();
      largest = std::max(largest, pmf[rng.sample_index(weights[d])].first);
    }
    const double x = static_cast<double>(largest);
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  check.estimate = mean;
  check.std_error = std::sqrt(m2 / (static_cast<double>(samples) * static_cast<double>(samples - 1)));
  check.ok = check.estimate <= check.bound + 3.0 * check.std_error;
  return check;
}

namespace {

// Exact search over non-preemptive schedules. Decisions happen at event
// times only (releases and port frees): between events, starting earlier
// never hurts a completion-time objective, so slot-by-slot branching adds
// nothing (cross-checked exhaustively in the tests).
class OracleSearch {
 public:
  explicit OracleSearch(const Instance& inst) : inst_(inst) {
    for (const auto& task : inst.tasks) {
      for (const auto& flow : task.flows) {
        if (flow.dist.pmf().size() != 1)
          throw std::invalid_argument("brute_force_opt: stochastic sizes are out of scope");
        flows_.push_back({flow.source, flow.sink, task.id, flow.release,
                          flow.dist.pmf().front().first, task.weight});
        total_size_ += flow.dist.pmf().front().first;
      }
    }
    if (flows_.size() > 8) throw std::invalid_argument("brute_force_opt: more than 8 flows");
    if (total_size_ > 12) throw std::invalid_argument("brute_force_opt: total size above 12");
    if (flows_.empty()) return;
  }

  double run() {
    if (flows_.empty()) return 0.0;
    std::vector<int> ends(flows_.size(), 0);
    return best(0, ends, 0);
  }

 private:
  struct Flow {
    int source, sink, task, release, size;
    double weight;
  };

  double objective(const std::vector<int>& ends) const {
    std::map<int, int> completion;
    for (std::size_t f = 0; f < flows_.size(); ++f) {
      auto [it, inserted] = completion.try_emplace(flows_[f].task, ends[f]);
      if (!inserted) it->second = std::max(it->second, ends[f]);
    }
    double total = 0.0;
    for (const auto& task : inst_.tasks) {
      auto it = completion.find(task.id);
      if (it != completion.end()) total += task.weight * it->second;
    }
    return total;
  }

  bool port_free(const std::vector<int>& ends, int t, int source, int sink) const {
    for (std::size_t f = 0; f < flows_.size(); ++f) {
      if (ends[f] <= t) continue;  // unstarted (0) or already finished
      if (flows_[f].source == source || flows_[f].sink == sink) return false;
    }
    return true;
  }

  // min_idx deduplicates same-time starts: within one event time flows are
  // started in increasing index order, which visits every start-set once.
  double best(int t, std::vector<int>& ends, std::size_t min_idx) {
    const bool canonical = min_idx == 0;
    std::vector<int> key;
    if (canonical) {
      key = ends;
      key.push_back(t);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }

    // Sizes are >= 1, so ends[f] == 0 always means "not started yet".
    bool all_started = true;
    for (int e : ends)
      if (e == 0) all_started = false;
    if (all_started) {
      const double value = objective(ends);
      if (canonical) memo_[key] = value;
      return value;
    }

    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t f = min_idx; f < flows_.size(); ++f) {
      if (ends[f] != 0) continue;
      if (flows_[f].release > t) continue;
      if (!port_free(ends, t, flows_[f].source, flows_[f].sink)) continue;
      ends[f] = t + flows_[f].size;
      best_value = std::min(best_value, best(t, ends, f + 1));
      ends[f] = 0;
    }

    int next_event = -1;
    for (std::size_t f = 0; f < flows_.size(); ++f) {
      if (ends[f] > t) next_event = next_event < 0 ? ends[f] : std::min(next_event, ends[f]);
      if (ends[f] == 0 && flows_[f].release > t)
        next_event = next_event < 0 ? flows_[f].release : std::min(next_event, flows_[f].release);
    }
    if (next_event > t) {
      std::vector<int> copy = ends;
      best_value = std::min(best_value, best(next_event, copy, 0));
    }

    if (canonical) memo_[key] = best_value;
    return best_value;
  }

  const Instance& inst_;
  std::vector<Flow> flows_;
  int total_size_ = 0;
  std::map<std::vector<int>, double> memo_;
};

}  // namespace

double brute_force_opt(const Instance& inst) {
  OracleSearch search(inst);
  return search.run();
}

RatioReport ratio_report(const Instance& inst, Policy policy, ExecutorKind executor,
                         long trials, std::uint64_t seed) {
  return ratio_report(inst, solve_relaxation(inst), policy, executor, trials, seed);
}

RatioReport ratio_report(const Instance& inst, const LpSolution& sol, Policy policy,
                         ExecutorKind executor, long trials, std::uint64_t seed) {
  const McEstimate est = monte_carlo_eval(inst, policy, executor, trials, seed,
                                          policy == Policy::npscs ? &sol : nullptr);
  RatioReport report;
  auto it = inst.metadata.find("name");
  report.instance_id = it != inst.metadata.end() ? it->second : "instance";
  report.policy = policy;
  report.executor = executor;
  report.m = inst.m;
  report.delta = instance_delta(inst);
  report.release_class = inst.max_release() > 0 ? ReleaseClass::general : ReleaseClass::zero;
  report.lp_bound = sol.objective;
  report.mean_objective = est.mean;
  report.std_error = est.std_error;
  report.trials = est.trials;
  report.ratio = sol.objective > 0.0 ? est.mean / sol.objective : 0.0;
  report.bound_applies = policy == Policy::npscs && inst.m >= 2;
  if (report.bound_applies) {
    const RatioBound bound = theoretical_ratio(inst.m, report.delta, report.release_class);
    report.bound_log2 = bound.log2_value;
    report.bound_ln = bound.ln_value;
    report.exceeds_bound = report.ratio > report.bound_log2;
  }
  return report;
}

}  // namespace coflow
