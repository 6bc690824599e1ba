#pragma once

#include <optional>
#include <string>

#include "coflow/instance.hpp"

namespace coflow {

struct ParseResult {
  std::optional<Instance> instance;      // set only when issues is empty
  std::vector<ValidationIssue> issues;
};

// Accepts any JSON formatting; collects all problems instead of stopping at
// the first. An instance is produced only if the input is fully valid.
ParseResult parse_instance_json(const std::string& text);
ParseResult load_instance(const std::string& path);

// Canonical serialization: fixed key order, tasks sorted by id, flows by
// (source, sink), sizes ascending, reals printed with up to 17 significant
// digits. parse(to_canonical_json(x)) == x, byte for byte on re-serialize.
std::string to_canonical_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

// %.17g formatting used everywhere a real is printed.
std::string format_real(double v);

}  // namespace coflow
