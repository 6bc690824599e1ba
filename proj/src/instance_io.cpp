#include "coflow/instance_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace coflow {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

using nlohmann::json;

class Collector {
 public:
  explicit Collector(std::vector<ValidationIssue>& issues) : issues_(issues) {}

  void add(std::string path, std::string code, std::string message) {
    issues_.push_back({std::move(path), std::move(code), std::move(message)});
  }

  bool require(bool ok, const std::string& path, const std::string& code,
               const std::string& message) {
    if (!ok) add(path, code, message);
    return ok;
  }

 private:
  std::vector<ValidationIssue>& issues_;
};

bool is_int(const json& j) { return j.is_number_integer(); }

std::optional<DiscreteDist> parse_dist(const json& j, const std::string& path, Collector& c) {
  if (!c.require(j.is_array() && !j.empty(), path, "dist-shape",
                 "dist must be a non-empty array of [size, probability] pairs"))
    return std::nullopt;
  std::vector<DiscreteDist::Entry> pmf;
  int prev = 0;
  double total = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    const std::string epath = path + "[" + std::to_string(i) + "]";
    if (!c.require(e.is_array() && e.size() == 2 && is_int(e[0]) && e[1].is_number(), epath,
                   "dist-shape", "entry must be [integer size, probability]")) {
      ok = false;
      continue;
    }
    const int size = e[0].get<int>();
    const double p = e[1].get<double>();
    if (!c.require(size >= 1, epath, "size-positive", "sizes must be integers >= 1")) ok = false;
    if (!c.require(size > prev, epath, "size-order", "sizes must be strictly increasing"))
      ok = false;
    if (!c.require(p > 0.0, epath, "prob-positive", "probabilities must be positive")) ok = false;
    prev = std::max(prev, size);
    total += p;
    pmf.emplace_back(size, p);
  }
  if (!ok) return std::nullopt;
  if (!c.require(std::abs(total - 1.0) <= 1e-9, path, "pmf-sum",
                 "pmf sums to " + format_real(total) + ", expected 1"))
    return std::nullopt;
  return DiscreteDist(std::move(pmf));
}

std::optional<FlowSpec> parse_flow(const json& j, const std::string& path, Collector& c) {
  if (!c.require(j.is_object(), path, "flow-shape", "flow must be an object")) return std::nullopt;
  FlowSpec flow;
  bool ok = true;
  if (c.require(j.contains("source") && is_int(j["source"]), path + ".source", "field-type",
                "source must be an integer"))
    flow.source = j["source"].get<int>();
  else
    ok = false;
  if (c.require(j.contains("sink") && is_int(j["sink"]), path + ".sink", "field-type",
                "sink must be an integer"))
    flow.sink = j["sink"].get<int>();
  else
    ok = false;
  if (j.contains("release")) {
    if (c.require(is_int(j["release"]), path + ".release", "field-type",
                  "release must be an integer"))
      flow.release = j["release"].get<int>();
    else
      ok = false;
  }
  if (!c.require(j.contains("dist"), path + ".dist", "field-missing", "flow needs a dist"))
    return std::nullopt;
  auto dist = parse_dist(j["dist"], path + ".dist", c);
  if (!dist) return std::nullopt;
  if (!ok) return std::nullopt;
  flow.dist = std::move(*dist);
  return flow;
}

}  // namespace

ParseResult parse_instance_json(const std::string& text) {
  ParseResult result;
  Collector c(result.issues);

  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    c.add("", "json-parse", e.what());
    return result;
  }

  if (!c.require(root.is_object(), "", "root-shape", "root must be an object")) return result;

  Instance inst;
  if (c.require(root.contains("m") && is_int(root["m"]), "m", "field-type",
                "m must be an integer"))
    inst.m = root["m"].get<int>();

  if (root.contains("metadata")) {
    if (c.require(root["metadata"].is_object(), "metadata", "field-type",
                  "metadata must be an object of strings")) {
      for (const auto& [key, value] : root["metadata"].items()) {
        if (c.require(value.is_string(), "metadata." + key, "field-type",
                      "metadata values must be strings"))
          inst.metadata[key] = value.get<std::string>();
      }
    }
  }

  if (c.require(root.contains("tasks") && root["tasks"].is_array(), "tasks", "field-type",
                "tasks must be an array")) {
    for (std::size_t ti = 0; ti < root["tasks"].size(); ++ti) {
      const auto& tj = root["tasks"][ti];
      const std::string tpath = "tasks[" + std::to_string(ti) + "]";
      if (!c.require(tj.is_object(), tpath, "task-shape", "task must be an object")) continue;
      CoflowTask task;
      if (c.require(tj.contains("id") && is_int(tj["id"]), tpath + ".id", "field-type",
                    "id must be an integer"))
        task.id = tj["id"].get<int>();
      if (tj.contains("weight")) {
        if (c.require(tj["weight"].is_number(), tpath + ".weight", "field-type",
                      "weight must be a number"))
          task.weight = tj["weight"].get<double>();
      }
      if (c.require(tj.contains("flows") && tj["flows"].is_array(), tpath + ".flows",
                    "field-type", "flows must be an array")) {
        for (std::size_t fi = 0; fi < tj["flows"].size(); ++fi) {
          auto flow = parse_flow(tj["flows"][fi],
                                 tpath + ".flows[" + std::to_string(fi) + "]", c);
          if (flow) task.flows.push_back(std::move(*flow));
        }
      }
      inst.tasks.push_back(std::move(task));
    }
  }

  if (!result.issues.empty()) return result;

  auto structural = validate_instance(inst);
  if (!structural.empty()) {
    result.issues = std::move(structural);
    return result;
  }
  result.instance = std::move(inst);
  return result;
}

ParseResult load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult result;
    result.issues.push_back({"", "file-open", "cannot open " + path});
    return result;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str());
}

std::string to_canonical_json(const Instance& inst) {
  Instance sorted = inst;
  std::sort(sorted.tasks.begin(), sorted.tasks.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (auto& task : sorted.tasks)
    std::sort(task.flows.begin(), task.flows.end(), [](const auto& a, const auto& b) {
      return std::pair{a.source, a.sink} < std::pair{b.source, b.sink};
    });

  std::ostringstream out;
  out << "{\n  \"m\": " << sorted.m << ",\n  \"metadata\": {";
  bool first = true;
  for (const auto& [key, value] : sorted.metadata) {
    out << (first ? "\n" : ",\n") << "    " << json(key).dump() << ": " << json(value).dump();
    first = false;
  }
  out << (sorted.metadata.empty() ? "" : "\n  ") << "},\n  \"tasks\": [";
  for (std::size_t ti = 0; ti < sorted.tasks.size(); ++ti) {
    const auto& task = sorted.tasks[ti];
    out << (ti ? ",\n" : "\n") << "    {\n      \"id\": " << task.id
        << ",\n      \"weight\": " << format_real(task.weight) << ",\n      \"flows\": [";
    for (std::size_t fi = 0; fi < task.flows.size(); ++fi) {
      const auto& flow = task.flows[fi];
      out << (fi ? ",\n" : "\n") << "        {\"source\": " << flow.source
          << ", \"sink\": " << flow.sink << ", \"release\": " << flow.release
          << ", \"dist\": [";
      const auto& pmf = flow.dist.pmf();
      for (std::size_t ei = 0; ei < pmf.size(); ++ei) {
        out << (ei ? ", " : "") << "[" << pmf[ei].first << ", " << format_real(pmf[ei].second)
            << "]";
      }
      out << "]}";
    }
    out << (task.flows.empty() ? "" : "\n      ") << "]\n    }";
  }
  out << (sorted.tasks.empty() ? "" : "\n  ") << "]\n}\n";
  return out.str();
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << to_canonical_json(inst);
}

}  // namespace coflow
