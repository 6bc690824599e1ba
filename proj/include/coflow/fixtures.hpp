#pragma once

#include <Eigen/Dense>

#include "coflow/instance.hpp"

namespace coflow {

// 4 servers, 3 tasks, 19 deterministic flows whose per-link expected load
// saturates every port exactly (all row and column sums equal). Sizes are
// the unit-scale loads times 100 so they stay integral; the decomposition
// of the load matrix is invariant under that scaling.
Instance fixture_saturated4();

// The same per-link load at unit scale, as one 4x4 matrix.
Eigen::MatrixXd fixture_saturated4_load();

// 5 servers, 3 tasks, 10 unit-size flows; small topology demo.
Instance fixture_small5();

}  // namespace coflow
