#pragma once

#include "coflow/instance.hpp"

namespace coflow {

// Planning horizon large enough that restricting start times to 0..F loses
// nothing: some optimal fractional solution fits entirely inside it.
struct Horizon {
  int F = 0;    // last usable start slot; columns are t = 0..F inclusive
  double F1 = 0.0;
  double F2 = 0.0;
};

// F1 = m * N * (max release + total expected size over all flows),
// F2 = 2 * m * N * max expected flow size, F = ceil(2*F1 + F2).
// Requires at least one flow.
Horizon compute_horizon(const Instance& inst);

}  // namespace coflow
