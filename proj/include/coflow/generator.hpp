#pragma once

#include <cstdint>

#include "coflow/instance.hpp"

namespace coflow {

enum class DistFamily { deterministic, two_point, truncated_geometric };
enum class ReleaseMode { zero, uniform };

struct GeneratorConfig {
  int servers = 2;
  int tasks = 1;
  // Fraction of the tasks * m^2 link grid carrying a flow. The flow count
  // depends only on the dimensions, never on the seed.
  double density = 0.5;
  DistFamily family = DistFamily::deterministic;
  int size_cap = 3;
  double weight_lo = 1.0;
  double weight_hi = 1.0;
  ReleaseMode release_mode = ReleaseMode::zero;
  int release_bound = 0;
};

// Same (config, seed) always yields the same instance; the result passes
// validate_instance. Each task gets at least one flow.
Instance generate_instance(const GeneratorConfig& cfg, std::uint64_t seed);

}  // namespace coflow
