#pragma once

namespace coflow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace coflow
