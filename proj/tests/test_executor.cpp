#include <stdexcept>
#include <vector>

#include "coflow/executor.hpp"
#include "coflow/lp_solution.hpp"
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

// Task k owns one flow; sizes 2, 3, 4 on links (1,1), (1,1), (2,2).
Instance three_flows(int release_third = 0) {
  Instance inst;
  inst.m = 2;
  inst.tasks.push_back({1, 1.0, {flow(1, 1, DiscreteDist::deterministic(2))}});
  inst.tasks.push_back({2, 1.0, {flow(1, 1, DiscreteDist::deterministic(3))}});
  inst.tasks.push_back({3, 1.0, {flow(2, 2, DiscreteDist::deterministic(4), release_third)}});
  return inst;
}

Schedule one_group() {
  Schedule s;
  s.groups.push_back({0, 1, {{1, 1, 1}, {1, 1, 2}, {2, 2, 3}}});
  return s;
}

Schedule two_groups() {
  Schedule s;
  s.groups.push_back({0, 1, {{1, 1, 1}}});
  s.groups.push_back({1, 1, {{2, 2, 3}, {1, 1, 2}}});
  return s;
}

}  // namespace

TEST_CASE("executor names round trip") {
  CHECK(parse_executor("barrier") == ExecutorKind::barrier);
  CHECK(parse_executor("list") == ExecutorKind::list);
  CHECK(to_string(ExecutorKind::list) == "list");
  CHECK_THROWS_AS(parse_executor("greedy"), std::invalid_argument);
}

TEST_CASE("realized sizes are reproducible and within support") {
  Instance inst = three_flows();
  inst.tasks[0].flows[0].dist = DiscreteDist::two_point(1, 0.5, 3);
  const Realization a = realize_sizes(inst, 5);
  const Realization b = realize_sizes(inst, 5);
  REQUIRE(a.sizes.size() == 3);
  CHECK(a.sizes == b.sizes);
  const int drawn = a.sizes.at({1, 1, 1});
  CHECK((drawn == 1 || drawn == 3));
  CHECK(a.sizes.at({1, 1, 2}) == 3);
  CHECK(a.sizes.at({2, 2, 3}) == 4);
}

TEST_CASE("one barrier group packs shared links back to back") {
  const Instance inst = three_flows();
  const Realization real = realize_sizes(inst, 1);
  const SimResult res = execute_barrier(inst, one_group(), real);

  CHECK(res.intervals.at({1, 1, 1}).start == 0);
  CHECK(res.intervals.at({1, 1, 1}).end == 2);
  CHECK(res.intervals.at({1, 1, 2}).start == 2);
  CHECK(res.intervals.at({1, 1, 2}).end == 5);
  CHECK(res.intervals.at({2, 2, 3}).start == 0);
  CHECK(res.intervals.at({2, 2, 3}).end == 4);
  CHECK(res.c_task.at(1) == 2);
  CHECK(res.c_task.at(2) == 5);
  CHECK(res.c_task.at(3) == 4);
  CHECK(res.objective == doctest::Approx(11.0));
  CHECK(res.makespan == 5);
  CHECK(check_sim_result(inst, real, res).empty());
}

TEST_CASE("a barrier drains the whole group before the next starts") {
  const Instance inst = three_flows();
  const Realization real = realize_sizes(inst, 1);
  const SimResult res = execute_barrier(inst, two_groups(), real);

  // Group two begins only at the first group's end, slot 2.
  CHECK(res.intervals.at({2, 2, 3}).start == 2);
  CHECK(res.intervals.at({1, 1, 2}).start == 2);
  CHECK(res.c_task.at(2) == 5);
  CHECK(res.c_task.at(3) == 6);
  CHECK(res.objective == doctest::Approx(13.0));
  CHECK(res.makespan == 6);
  CHECK(check_sim_result(inst, real, res).empty());
}

TEST_CASE("the list executor reuses gaps the barrier leaves") {
  const Instance inst = three_flows();
  const Realization real = realize_sizes(inst, 1);
  const SimResult res = execute_list(inst, two_groups(), real);

  // (2,2,3) runs from slot 0: its ports are free even though it sits in
  // the second group.
  CHECK(res.intervals.at({2, 2, 3}).start == 0);
  CHECK(res.intervals.at({1, 1, 2}).start == 2);
  CHECK(res.objective == doctest::Approx(11.0));
  CHECK(res.makespan == 5);
  CHECK(check_sim_result(inst, real, res).empty());
}

TEST_CASE("releases hold back both executors") {
  const Instance inst = three_flows(/*release_third=*/3);
  const Realization real = realize_sizes(inst, 1);

  // Barrier: the release lifts the whole second group's base to 3.
  const SimResult barrier = execute_barrier(inst, two_groups(), real);
  CHECK(barrier.intervals.at({2, 2, 3}).start == 3);
  CHECK(barrier.intervals.at({1, 1, 2}).start == 3);
  CHECK(barrier.objective == doctest::Approx(2.0 + 6.0 + 7.0));
  CHECK(check_sim_result(inst, real, barrier).empty());

  // List: only the released flow waits.
  const SimResult list = execute_list(inst, two_groups(), real);
  CHECK(list.intervals.at({2, 2, 3}).start == 3);
  CHECK(list.intervals.at({1, 1, 2}).start == 2);
  CHECK(list.objective == doctest::Approx(2.0 + 5.0 + 7.0));
  CHECK(check_sim_result(inst, real, list).empty());
}

TEST_CASE("the audit flags corrupted executions") {
  const Instance inst = three_flows();
  const Realization real = realize_sizes(inst, 1);
  const SimResult good = execute_barrier(inst, one_group(), real);
  REQUIRE(check_sim_result(inst, real, good).empty());

  SimResult bad = good;
  bad.intervals[{1, 1, 2}] = {1, 4};  // overlaps (1,1,1) on both ports
  CHECK(!check_sim_result(inst, real, bad).empty());

  bad = good;
  bad.intervals[{2, 2, 3}] = {0, 3};  // one slot short of the drawn size
  CHECK(!check_sim_result(inst, real, bad).empty());

  bad = good;
  bad.c_task[2] = 4;
  CHECK(!check_sim_result(inst, real, bad).empty());

  bad = good;
  bad.objective += 1.0;
  CHECK(!check_sim_result(inst, real, bad).empty());

  bad = good;
  bad.intervals.erase({1, 1, 1});
  CHECK(!check_sim_result(inst, real, bad).empty());

  const Instance held = three_flows(/*release_third=*/3);
  const Realization held_real = realize_sizes(held, 1);
  SimResult early = execute_barrier(held, two_groups(), held_real);
  early.intervals[{2, 2, 3}] = {1, 5};  // jumps its release
  CHECK(!check_sim_result(held, held_real, early).empty());
}

TEST_CASE("monte carlo on a two-flow contention instance") {
  Instance inst;
  inst.m = 1;
  inst.tasks.push_back({1, 1.0, {flow(1, 1, DiscreteDist::deterministic(1))}});
  inst.tasks.push_back({2, 1.0, {flow(1, 1, DiscreteDist::deterministic(1))}});
  const LpSolution sol = solve_relaxation(inst);

  // Either order completes the tasks at 1 and 2.
  const McEstimate est = monte_carlo_eval(inst, Policy::npscs, ExecutorKind::barrier, 64, 3, &sol);
  CHECK(est.trials == 64);
  CHECK(est.mean == doctest::Approx(3.0));
  CHECK(est.std_error == doctest::Approx(0.0));
  CHECK(est.task_mean.at(1) + est.task_mean.at(2) == doctest::Approx(3.0));

  const McEstimate fifo = monte_carlo_eval(inst, Policy::fifo, ExecutorKind::list, 8, 3);
  CHECK(fifo.mean == doctest::Approx(3.0));
  CHECK(fifo.task_mean.at(1) == doctest::Approx(1.0));
  CHECK(fifo.task_mean.at(2) == doctest::Approx(2.0));

  // The presolved shortcut changes nothing observable.
  const McEstimate without = monte_carlo_eval(inst, Policy::npscs, ExecutorKind::barrier, 8, 9);
  const McEstimate with = monte_carlo_eval(inst, Policy::npscs, ExecutorKind::barrier, 8, 9, &sol);
  CHECK(without.mean == with.mean);
  CHECK(without.task_mean.at(1) == with.task_mean.at(1));

  CHECK_THROWS_AS(monte_carlo_eval(inst, Policy::fifo, ExecutorKind::list, 0, 1),
                  std::invalid_argument);
}
