#pragma once

#include <utility>
#include <vector>

namespace coflow {

// Discrete distribution over integer sizes >= 1. Valid by construction:
// sizes strictly increasing, probabilities positive and summing to 1
// within 1e-9 (then renormalized exactly).
class DiscreteDist {
 public:
  using Entry = std::pair<int, double>;  // (size, probability)

  // Default is the unit deterministic size.
  DiscreteDist() : DiscreteDist(std::vector<Entry>{{1, 1.0}}) {}
  explicit DiscreteDist(std::vector<Entry> pmf);

  static DiscreteDist deterministic(int size);
  static DiscreteDist two_point(int a, double pa, int b);
  // P(S = s) proportional to q^(s-1) for s = 1..cap.
  static DiscreteDist truncated_geometric(double q, int cap);

  const std::vector<Entry>& pmf() const { return pmf_; }
  int max_size() const { return pmf_.back().first; }
  double mean() const { return mean_; }
  double second_moment() const { return m2_; }
  // Squared coefficient of variation, Var(S)/E[S]^2.
  double cv_squared() const;
  // tail(r) = P(S >= r + 1); tail(0) = 1, and sum_r tail(r) = mean.
  double tail(int r) const;

  bool operator==(const DiscreteDist& other) const { return pmf_ == other.pmf_; }

 private:
  std::vector<Entry> pmf_;
  std::vector<double> tail_;  // tail_[r] = P(S >= r+1), r = 0..max_size-1
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace coflow
