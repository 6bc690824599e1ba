#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "coflow/dist.hpp"

namespace coflow {

// Identifies one flow: source server i, sink server j, owning task k.
// A task has at most one flow per (source, sink) link.
struct FlowKey {
  int source = 0;
  int sink = 0;
  int task = 0;
  auto operator<=>(const FlowKey&) const = default;
};

struct FlowSpec {
  int source = 0;
  int sink = 0;
  int release = 0;
  DiscreteDist dist;
  bool operator==(const FlowSpec&) const = default;
};

struct CoflowTask {
  int id = 0;
  double weight = 1.0;
  std::vector<FlowSpec> flows;
  bool operator==(const CoflowTask&) const = default;
};

// m servers (each with one ingress and one egress port), tasks with ids
// 1..N contiguous. Servers are numbered 1..m.
struct Instance {
  int m = 0;
  std::vector<CoflowTask> tasks;
  std::map<std::string, std::string> metadata;

  std::size_t num_flows() const;
  // All flows paired with their keys, sorted by (source, sink, task).
  std::vector<std::pair<FlowKey, const FlowSpec*>> all_flows() const;
  const FlowSpec* find_flow(const FlowKey& key) const;
  int max_release() const;
  int max_flow_size() const;

  bool operator==(const Instance&) const = default;
};

// Largest cv^2 over the instance's flow size distributions.
double instance_delta(const Instance& inst);

struct ValidationIssue {
  std::string path;     // e.g. "tasks[2].flows[0].source"
  std::string code;     // short machine-readable code, e.g. "server-range"
  std::string message;  // human-readable detail
};

// Structural checks on an in-memory instance: server count, server ranges,
// contiguous task ids, positive weights, duplicate links within a task,
// negative releases. Pmf validity is enforced by DiscreteDist itself.
std::vector<ValidationIssue> validate_instance(const Instance& inst);

}  // namespace coflow
