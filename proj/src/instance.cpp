#include "coflow/instance.hpp"

#include <algorithm>
#include <set>

namespace coflow {

std::size_t Instance::num_flows() const {
  std::size_t n = 0;
  for (const auto& task : tasks) n += task.flows.size();
  return n;
}

std::vector<std::pair<FlowKey, const FlowSpec*>> Instance::all_flows() const {
  std::vector<std::pair<FlowKey, const FlowSpec*>> out;
  out.reserve(num_flows());
  for (const auto& task : tasks)
    for (const auto& flow : task.flows)
      out.emplace_back(FlowKey{flow.source, flow.sink, task.id}, &flow);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

const FlowSpec* Instance::find_flow(const FlowKey& key) const {
  for (const auto& task : tasks) {
    if (task.id != key.task) continue;
    for (const auto& flow : task.flows)
      if (flow.source == key.source && flow.sink == key.sink) return &flow;
  }
  return nullptr;
}

int Instance::max_release() const {
  int r = 0;
  for (const auto& task : tasks)
    for (const auto& flow : task.flows) r = std::max(r, flow.release);
  return r;
}

int Instance::max_flow_size() const {
  int s = 0;
  for (const auto& task : tasks)
    for (const auto& flow : task.flows) s = std::max(s, flow.dist.max_size());
  return s;
}

double instance_delta(const Instance& inst) {
  double delta = 0.0;
  for (const auto& task : inst.tasks)
    for (const auto& flow : task.flows) delta = std::max(delta, flow.dist.cv_squared());
  return delta;
}

namespace {

std::string idx(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

}  // namespace

std::vector<ValidationIssue> validate_instance(const Instance& inst) {
  std::vector<ValidationIssue> issues;
  auto add = [&](std::string path, std::string code, std::string message) {
    issues.push_back({std::move(path), std::move(code), std::move(message)});
  };

  if (inst.m < 1) add("m", "server-count", "need at least one server");

  for (std::size_t ti = 0; ti < inst.tasks.size(); ++ti) {
    const auto& task = inst.tasks[ti];
    const std::string tpath = idx("tasks", ti);
    if (task.id != static_cast<int>(ti) + 1)
      add(tpath + ".id", "task-ids",
          "task ids must be 1..N in order; expected " + std::to_string(ti + 1) +
              ", got " + std::to_string(task.id));
    if (!(task.weight > 0.0))
      add(tpath + ".weight", "weight-positive", "task weight must be positive");

    std::set<std::pair<int, int>> links;
    for (std::size_t fi = 0; fi < task.flows.size(); ++fi) {
      const auto& flow = task.flows[fi];
      const std::string fpath = tpath + "." + idx("flows", fi);
      if (flow.source < 1 || flow.source > inst.m)
        add(fpath + ".source", "server-range",
            "source " + std::to_string(flow.source) + " outside 1.." + std::to_string(inst.m));
      if (flow.sink < 1 || flow.sink > inst.m)
        add(fpath + ".sink", "server-range",
            "sink " + std::to_string(flow.sink) + " outside 1.." + std::to_string(inst.m));
      if (flow.release < 0)
        add(fpath + ".release", "release-negative", "release time must be >= 0");
      if (!links.insert({flow.source, flow.sink}).second)
        add(fpath, "duplicate-link",
            "task " + std::to_string(task.id) + " has two flows on link (" +
                std::to_string(flow.source) + "," + std::to_string(flow.sink) + ")");
    }
  }
  return issues;
}

}  // namespace coflow
