#include "coflow/dist.hpp"

#include <cmath>
#include <stdexcept>

namespace coflow {

DiscreteDist::DiscreteDist(std::vector<Entry> pmf) : pmf_(std::move(pmf)) {
  if (pmf_.empty()) throw std::invalid_argument("dist: empty pmf");
  int prev = 0;
  double total = 0.0;
  for (const auto& [size, p] : pmf_) {
    if (size < 1) throw std::invalid_argument("dist: sizes must be >= 1");
    if (size <= prev) throw std::invalid_argument("dist: sizes must be strictly increasing");
    if (p <= 0.0) throw std::invalid_argument("dist: probabilities must be positive");
    prev = size;
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument("dist: pmf must sum to 1");
  for (auto& [size, p] : pmf_) p /= total;

  tail_.assign(static_cast<std::size_t>(max_size()), 0.0);
  double acc = 0.0;  // P(S >= r+1) accumulated from the top
  auto it = pmf_.rbegin();
  for (int r = max_size() - 1; r >= 0; --r) {
    while (it != pmf_.rend() && it->first >= r + 1) {
      acc += it->second;
      ++it;
    }
    tail_[static_cast<std::size_t>(r)] = acc;
  }
  for (const auto& [size, p] : pmf_) {
    mean_ += size * p;
    m2_ += static_cast<double>(size) * size * p;
  }
}

DiscreteDist DiscreteDist::deterministic(int size) {
  return DiscreteDist({{size, 1.0}});
}

DiscreteDist DiscreteDist::two_point(int a, double pa, int b) {
  if (pa <= 0.0 || pa >= 1.0) throw std::invalid_argument("two_point: pa must be in (0,1)");
  if (a >= b) throw std::invalid_argument("two_point: need a < b");
  return DiscreteDist({{a, pa}, {b, 1.0 - pa}});
}

DiscreteDist DiscreteDist::truncated_geometric(double q, int cap) {
  if (q <= 0.0 || q >= 1.0) throw std::invalid_argument("truncated_geometric: q must be in (0,1)");
  if (cap < 1) throw std::invalid_argument("truncated_geometric: cap must be >= 1");
  std::vector<Entry> pmf;
  double mass = 1.0;
  double total = 0.0;
  for (int s = 1; s <= cap; ++s) {
    pmf.emplace_back(s, mass);
    total += mass;
    mass *= q;
  }
  for (auto& [size, p] : pmf) p /= total;
  return DiscreteDist(std::move(pmf));
}

double DiscreteDist::cv_squared() const {
  const double var = m2_ - mean_ * mean_;
  return var <= 0.0 ? 0.0 : var / (mean_ * mean_);
}

double DiscreteDist::tail(int r) const {
  if (r < 0) return 1.0;
  if (r >= max_size()) return 0.0;
  return tail_[static_cast<std::size_t>(r)];
}

}  // namespace coflow
