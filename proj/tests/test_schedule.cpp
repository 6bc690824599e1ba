#include <set>
#include <stdexcept>
#include <vector>

#include "coflow/fixtures.hpp"
#include "coflow/lp_solution.hpp"
#include "coflow/schedule.hpp"
#include "doctest.h"

using namespace coflow;

namespace {

FlowSpec flow(int source, int sink, DiscreteDist dist, int release = 0) {
  FlowSpec f;
  f.source = source;
  f.sink = sink;
  f.release = release;
  f.dist = std::move(dist);
  return f;
}

}  // namespace

TEST_CASE("policy names round trip") {
  for (Policy p : {Policy::npscs, Policy::fifo, Policy::wsept})
    CHECK(parse_policy(to_string(p)) == p);
  CHECK_THROWS_AS(parse_policy("lifo"), std::invalid_argument);
}

TEST_CASE("pass mapping splits the saturated fixture group as published") {
  const Instance inst = fixture_saturated4();
  GroupMatrix group;
  group.s = 0;
  group.D = fixture_saturated4_load();
  for (const auto& [key, f] : inst.all_flows()) group.members.push_back(key);

  const auto split = map_groups(group, gljd_decompose(group.D));
  const std::vector<std::vector<FlowKey>> expected = {
      {{1, 4, 1},
       {2, 3, 1},
       {2, 3, 2},
       {2, 3, 3},
       {3, 2, 1},
       {3, 2, 2},
       {3, 2, 3},
       {4, 1, 1},
       {4, 1, 3}},
      {{1, 1, 1}, {2, 2, 2}, {3, 4, 2}, {4, 3, 3}},
      {{1, 3, 2}, {2, 1, 3}, {4, 2, 2}},
      {{3, 3, 3}, {4, 4, 1}},
      {{2, 4, 1}},
  };
  REQUIRE(split.size() == expected.size());
  for (std::size_t l = 0; l < split.size(); ++l) CHECK(split[l] == expected[l]);

  std::size_t total = 0;
  for (const auto& members : split) total += members.size();
  CHECK(total == inst.num_flows());
}

TEST_CASE("schedules from an assignment emit groups in slot and pass order") {
  Instance inst;
  inst.m = 2;
  inst.tasks.push_back({1, 1.0, {flow(1, 1, DiscreteDist::deterministic(1))}});
  inst.tasks.push_back({2, 1.0, {flow(1, 2, DiscreteDist::deterministic(2))}});
  inst.tasks.push_back({3, 1.0, {flow(2, 2, DiscreteDist::deterministic(3))}});

  TentativeAssignment assignment;
  assignment.starts = {{{1, 1, 1}, 0}, {{1, 2, 2}, 0}, {{2, 2, 3}, 0}};
  const Schedule schedule = build_schedule(inst, assignment);
  CHECK(schedule.policy == Policy::npscs);

  // Slot 0 loads: (1,1)=1, (1,2)=2, (2,2)=3. The first pass keeps (2,2)
  // and (1,1); link (1,2) conflicts on both ports and lands in pass 2.
  REQUIRE(schedule.groups.size() == 2);
  CHECK(schedule.groups[0].s == 0);
  CHECK(schedule.groups[0].l == 1);
  CHECK(schedule.groups[0].members == std::vector<FlowKey>{{1, 1, 1}, {2, 2, 3}});
  CHECK(schedule.groups[1].s == 0);
  CHECK(schedule.groups[1].l == 2);
  CHECK(schedule.groups[1].members == std::vector<FlowKey>{{1, 2, 2}});
}

TEST_CASE("same-link flows stay in one pass") {
  Instance inst;
  inst.m = 1;
  inst.tasks.push_back({1, 1.0, {flow(1, 1, DiscreteDist::deterministic(1))}});
  inst.tasks.push_back({2, 1.0, {flow(1, 1, DiscreteDist::deterministic(2))}});

  TentativeAssignment assignment;
  assignment.starts = {{{1, 1, 1}, 2}, {{1, 1, 2}, 2}};
  const Schedule schedule = build_schedule(inst, assignment);
  REQUIRE(schedule.groups.size() == 1);
  CHECK(schedule.groups[0].s == 2);
  CHECK(schedule.groups[0].members == std::vector<FlowKey>{{1, 1, 1}, {1, 1, 2}});
}

TEST_CASE("fifo orders flows by release then key") {
  Instance inst;
  inst.m = 2;
  inst.tasks.push_back({1, 1.0, {flow(2, 2, DiscreteDist::deterministic(1)),
                                 flow(1, 1, DiscreteDist::deterministic(1), 2)}});
  inst.tasks.push_back({2, 1.0, {flow(1, 2, DiscreteDist::deterministic(1))}});

  const Schedule schedule = schedule_fifo(inst);
  CHECK(schedule.policy == Policy::fifo);
  REQUIRE(schedule.groups.size() == 3);
  CHECK(schedule.groups[0].members == std::vector<FlowKey>{{2, 2, 1}});
  CHECK(schedule.groups[1].members == std::vector<FlowKey>{{1, 2, 2}});
  CHECK(schedule.groups[2].members == std::vector<FlowKey>{{1, 1, 1}});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(schedule.groups[i].s == static_cast<int>(i));
    CHECK(schedule.groups[i].l == 1);
  }
}

TEST_CASE("wsept ranks tasks by weight per expected size") {
  Instance inst;
  inst.m = 2;
  inst.tasks.push_back({1, 1.0, {flow(1, 1, DiscreteDist::deterministic(4))}});
  inst.tasks.push_back({2, 3.0, {flow(1, 2, DiscreteDist::deterministic(2)),
                                 flow(2, 1, DiscreteDist::deterministic(4))}});
  inst.tasks.push_back({3, 1.0, {flow(2, 2, DiscreteDist::deterministic(2))}});

  // Rates: task1 = 0.25, task2 = 0.5, task3 = 0.5; the tie goes to the
  // lower id.
  const Schedule schedule = schedule_wsept(inst);
  REQUIRE(schedule.groups.size() == 3);
  CHECK(schedule.groups[0].members == std::vector<FlowKey>{{1, 2, 2}, {2, 1, 2}});
  CHECK(schedule.groups[1].members == std::vector<FlowKey>{{2, 2, 3}});
  CHECK(schedule.groups[2].members == std::vector<FlowKey>{{1, 1, 1}});
}

TEST_CASE("sampled schedules are reproducible and cover every flow") {
  const Instance inst = fixture_small5();
  const LpSolution sol = solve_relaxation(inst);
  const Schedule a = build_schedule(inst, sol, 11);
  const Schedule b = build_schedule(inst, sol, 11);
  CHECK(a.seed == 11);
  REQUIRE(a.groups.size() == b.groups.size());
  std::set<FlowKey> seen;
  int prev_s = -1;
  int prev_l = 0;
  for (std::size_t g = 0; g < a.groups.size(); ++g) {
    CHECK(a.groups[g].s == b.groups[g].s);
    CHECK(a.groups[g].l == b.groups[g].l);
    CHECK(a.groups[g].members == b.groups[g].members);
    // (s, l) strictly increases lexicographically.
    if (a.groups[g].s == prev_s)
      CHECK(a.groups[g].l > prev_l);
    else
      CHECK(a.groups[g].s > prev_s);
    prev_s = a.groups[g].s;
    prev_l = a.groups[g].l;
    for (const FlowKey& key : a.groups[g].members) CHECK(seen.insert(key).second);
  }
  CHECK(seen.size() == inst.num_flows());
}
