#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

#include "coflow/report.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace coflow;

namespace {

const char* kFullConfig = R"({
  "name": "sweep",
  "master_seed": 42,
  "trials": 6,
  "instances": 3,
  "policies": ["npscs", "fifo", "wsept"],
  "executor": "list",
  "generator": {
    "servers": [2, 3],
    "tasks": 2,
    "density": 0.4,
    "family": "two_point",
    "size_cap": 2,
    "weight_lo": 1.0,
    "weight_hi": 5.0,
    "release_mode": "uniform",
    "release_bound": 2
  }
})";

long count_lines(const std::string& text) {
  return std::count(text.begin(), text.end(), '\n');
}

}  // namespace

TEST_CASE("bench config parsing covers every field") {
  const BenchConfig cfg = parse_bench_config(kFullConfig);
  CHECK(cfg.name == "sweep");
  CHECK(cfg.master_seed == 42);
  CHECK(cfg.trials == 6);
  CHECK(cfg.instances == 3);
  REQUIRE(cfg.policies.size() == 3);
  CHECK(cfg.policies[0] == Policy::npscs);
  CHECK(cfg.policies[2] == Policy::wsept);
  CHECK(cfg.executor == ExecutorKind::list);
  CHECK(cfg.servers == std::vector<int>{2, 3});
  CHECK(cfg.generator.tasks == 2);
  CHECK(cfg.generator.density == doctest::Approx(0.4));
  CHECK(cfg.generator.family == DistFamily::two_point);
  CHECK(cfg.generator.size_cap == 2);
  CHECK(cfg.generator.weight_hi == doctest::Approx(5.0));
  CHECK(cfg.generator.release_mode == ReleaseMode::uniform);
  CHECK(cfg.generator.release_bound == 2);
}

TEST_CASE("bench config defaults and scalar servers") {
  const BenchConfig cfg = parse_bench_config(R"({"generator": {"servers": 4}})");
  CHECK(cfg.name == "bench");
  CHECK(cfg.master_seed == 1);
  CHECK(cfg.trials == 10);
  CHECK(cfg.instances == 5);
  CHECK(cfg.policies == std::vector<Policy>{Policy::npscs});
  CHECK(cfg.executor == ExecutorKind::barrier);
  CHECK(cfg.servers == std::vector<int>{4});
  CHECK(cfg.generator.family == DistFamily::deterministic);
}

TEST_CASE("bench config rejects unusable values") {
  CHECK_THROWS_AS(parse_bench_config(R"({"trials": 0})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"instances": 0})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"policies": []})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"policies": ["random"]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"executor": "greedy"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config(R"({"generator": {"family": "gaussian"}})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_bench_config("{"), nlohmann::json::parse_error);
}

TEST_CASE("canonical config lines ignore formatting differences") {
  const std::string reordered = R"({
    "generator": {
      "release_bound": 2, "release_mode": "uniform", "weight_hi": 5.0,
      "weight_lo": 1.0, "size_cap": 2, "family": "two_point",
      "density": 0.4, "tasks": 2, "servers": [2, 3]
    },
    "executor": "list", "policies": ["npscs", "fifo", "wsept"],
    "instances": 3, "trials": 6, "master_seed": 42, "name": "sweep"})";
  CHECK(canonical_config_line(parse_bench_config(kFullConfig)) ==
        canonical_config_line(parse_bench_config(reordered)));
  CHECK(canonical_config_line(parse_bench_config(kFullConfig)) !=
        canonical_config_line(parse_bench_config(R"({"generator": {"servers": 4}})")));
}

TEST_CASE("bench runs are deterministic row for row") {
  BenchConfig cfg;
  cfg.name = "tiny";
  cfg.master_seed = 9;
  cfg.trials = 4;
  cfg.instances = 2;
  cfg.policies = {Policy::npscs, Policy::fifo};
  cfg.executor = ExecutorKind::barrier;
  cfg.servers = {2};
  cfg.generator.tasks = 2;
  cfg.generator.density = 0.4;
  cfg.generator.family = DistFamily::deterministic;
  cfg.generator.size_cap = 2;

  const BenchOutput first = run_bench(cfg);
  const BenchOutput second = run_bench(cfg);
  CHECK(first.csv == second.csv);
  CHECK(first.summary == second.summary);
  REQUIRE(first.reports.size() == 4);  // 1 sweep entry * 2 instances * 2 policies

  // Three comment lines, one column header, one row per report.
  CHECK(count_lines(first.csv) == 4 + 4);
  CHECK(first.csv.rfind("# tool=coflow", 0) == 0);

  for (const RatioReport& report : first.reports) {
    CHECK(report.trials == 4);
    CHECK(report.lp_bound > 0.0);
    CHECK(report.ratio >= 1.0 - 1e-9);
    if (report.policy == Policy::npscs) {
      CHECK(report.bound_applies);
      CHECK_FALSE(report.exceeds_bound);
    } else {
      CHECK_FALSE(report.bound_applies);
    }
  }

  // The summary aggregates one line per (m, policy) pair plus two headers.
  CHECK(count_lines(first.summary) == 2 + 2);
}
