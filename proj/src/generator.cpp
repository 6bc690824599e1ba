#include "coflow/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coflow/rng.hpp"

namespace coflow {

namespace {

DiscreteDist draw_dist(const GeneratorConfig& cfg, Rng& rng) {
  switch (cfg.family) {
    case DistFamily::deterministic: {
      const int size = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(cfg.size_cap)));
      return DiscreteDist::deterministic(size);
    }
    case DistFamily::two_point: {
      const int hi = std::max(2, cfg.size_cap);
      const int b = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(hi - 1)));
      return DiscreteDist::two_point(1, 0.5, b);
    }
    case DistFamily::truncated_geometric:
      return DiscreteDist::truncated_geometric(0.5, std::max(1, cfg.size_cap));
  }
  throw std::logic_error("draw_dist: unknown family");
}

}  // namespace

Instance generate_instance(const GeneratorConfig& cfg, std::uint64_t seed) {
  if (cfg.servers < 1) throw std::invalid_argument("generate_instance: servers must be >= 1");
  if (cfg.tasks < 1) throw std::invalid_argument("generate_instance: tasks must be >= 1");
  if (cfg.size_cap < 1) throw std::invalid_argument("generate_instance: size_cap must be >= 1");
  if (cfg.density < 0.0 || cfg.density > 1.0)
    throw std::invalid_argument("generate_instance: density must be in [0,1]");
  if (cfg.weight_lo <= 0.0 || cfg.weight_hi < cfg.weight_lo)
    throw std::invalid_argument("generate_instance: need 0 < weight_lo <= weight_hi");
  if (cfg.release_mode == ReleaseMode::uniform && cfg.release_bound < 0)
    throw std::invalid_argument("generate_instance: release_bound must be >= 0");

  const int m = cfg.servers;
  const int n = cfg.tasks;
  const int grid = m * m;

  // Flow count is a pure function of the dimensions so that sweeps over
  // seeds compare like against like.
  const long total_target = std::lround(cfg.density * n * grid);
  const long total = std::clamp(total_target, static_cast<long>(n),
                                static_cast<long>(n) * grid);
  std::vector<int> per_task(static_cast<std::size_t>(n), static_cast<int>(total / n));
  for (long i = 0; i < total % n; ++i) per_task[static_cast<std::size_t>(i)]++;

  Rng rng(derive_seed(seed, 0x67656eULL, static_cast<std::uint64_t>(m)));

  Instance inst;
  inst.m = m;
  for (int k = 1; k <= n; ++k) {
    CoflowTask task;
    task.id = k;
    task.weight = cfg.weight_lo + (cfg.weight_hi - cfg.weight_lo) * rng.next_double();

    // Partial Fisher-Yates picks `count` distinct links for this task.
    std::vector<int> links(static_cast<std::size_t>(grid));
    for (int l = 0; l < grid; ++l) links[static_cast<std::size_t>(l)] = l;
    const int count = per_task[static_cast<std::size_t>(k - 1)];
    for (int pick = 0; pick < count; ++pick) {
      const auto swap_at =
          pick + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(grid - pick)));
      std::swap(links[static_cast<std::size_t>(pick)], links[static_cast<std::size_t>(swap_at)]);
      FlowSpec flow;
      flow.source = links[static_cast<std::size_t>(pick)] / m + 1;
      flow.sink = links[static_cast<std::size_t>(pick)] % m + 1;
      flow.release = cfg.release_mode == ReleaseMode::zero || cfg.release_bound == 0
                         ? 0
                         : static_cast<int>(rng.next_below(
                               static_cast<std::uint64_t>(cfg.release_bound) + 1));
      flow.dist = draw_dist(cfg, rng);
      task.flows.push_back(std::move(flow));
    }
    std::sort(task.flows.begin(), task.flows.end(), [](const auto& a, const auto& b) {
      return std::pair{a.source, a.sink} < std::pair{b.source, b.sink};
    });
    inst.tasks.push_back(std::move(task));
  }
  return inst;
}

}  // namespace coflow
