#pragma once

#include <iosfwd>

#include "coflow/bench.hpp"
#include "coflow/generator.hpp"

namespace coflow {

// Batch configuration for the benchmark harness, parsed from JSON:
// {"name": ..., "master_seed": N, "trials": N, "instances": N,
//  "policies": ["npscs", ...], "executor": "barrier"|"list",
//  "generator": {"servers": N | [N, ...], "tasks": N, "density": X,
//                "family": "deterministic"|"two_point"|"truncated_geometric",
//                "size_cap": N, "weight_lo": X, "weight_hi": X,
//                "release_mode": "zero"|"uniform", "release_bound": N}}
struct BenchConfig {
  std::string name = "bench";
  std::uint64_t master_seed = 1;
  long trials = 10;
  int instances = 5;
  std::vector<Policy> policies = {Policy::npscs};
  ExecutorKind executor = ExecutorKind::barrier;
  std::vector<int> servers = {2};
  GeneratorConfig generator;  // servers field overridden per sweep entry
};

BenchConfig parse_bench_config(const std::string& text);
BenchConfig load_bench_config(const std::string& path);

// One line, fixed key order; equal configs give equal strings.
std::string canonical_config_line(const BenchConfig& cfg);

struct BenchOutput {
  std::string csv;      // ratio rows, one per (instance, policy)
  std::string summary;  // per (m, policy) aggregate table
  std::vector<RatioReport> reports;
};

// Deterministic given the config: instance i of sweep entry m is generated
// with derive_seed(master_seed, m, i) and evaluated with a seed derived per
// policy. The LP is solved once per instance and shared across policies.
BenchOutput run_bench(const BenchConfig& cfg);

std::string to_string(DistFamily family);
std::string to_string(ReleaseMode mode);

}  // namespace coflow
