#include "coflow/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace coflow {

namespace {

class RevisedSimplex {
 public:
  RevisedSimplex(const SparseLp& lp, const SimplexOptions& opts) : lp_(lp), opts_(opts) {
    const int rows = lp.num_rows;
    if (static_cast<int>(lp.rhs.size()) != rows || static_cast<int>(lp.sense.size()) != rows)
      throw std::invalid_argument("simplex: rhs/sense size mismatch");
    for (double b : lp.rhs)
      if (b < 0.0) throw std::invalid_argument("simplex: rhs must be >= 0");

    n_struct_ = static_cast<int>(lp.cols.size());
    all_cols_ = lp.cols;
    // One unit column per row: slack for an inequality, artificial for an
    // equality. Together they form the identity cold-start basis.
    for (int r = 0; r < rows; ++r) {
      SparseLp::Col unit;
      unit.a.emplace_back(r, 1.0);
      all_cols_.push_back(std::move(unit));
    }
    is_art_.assign(all_cols_.size(), false);
    for (int r = 0; r < rows; ++r)
      if (lp.sense[static_cast<std::size_t>(r)] == '=')
        is_art_[static_cast<std::size_t>(n_struct_ + r)] = true;
    reset_cold();
  }

  SimplexResult run() {
    SimplexResult result;

    double art_mass = 0.0;
    for (std::size_t i = 0; i < is_art_.size(); ++i)
      if (is_art_[i]) art_mass += 1.0;
    if (art_mass > 0.0) {
      const SimplexStatus p1 = iterate(/*phase1=*/true, result.iterations);
      if (p1 != SimplexStatus::optimal) {
        result.status = p1 == SimplexStatus::unbounded ? SimplexStatus::numerical_error : p1;
        return result;
      }
      if (!refactor()) {
        result.status = SimplexStatus::numerical_error;
        return result;
      }
      if (phase_objective(true) > 1e-7) {
        result.status = SimplexStatus::infeasible;
        return result;
      }
      if (!expel_artificials()) {
        result.status = SimplexStatus::numerical_error;
        return result;
      }
    }

    const SimplexStatus p2 = iterate(/*phase1=*/false, result.iterations);
    if (p2 != SimplexStatus::optimal) {
      result.status = p2;
      return result;
    }
    if (!polish(result.iterations)) {
      result.status = SimplexStatus::numerical_error;
      return result;
    }
    extract(result);
    return result;
  }

  SimplexResult run_warm(const std::vector<int>& start_basis) {
    SimplexResult result;
    if (!install_warm_basis(start_basis)) {
      reset_cold();
      return run();
    }

    const SimplexStatus dual = dual_iterate(result.iterations);
    if (dual == SimplexStatus::infeasible) {
      result.status = SimplexStatus::infeasible;
      return result;
    }
    if (dual != SimplexStatus::optimal) {
      // Stall or numerical trouble on the warm path; a cold solve settles it.
      reset_cold();
      return run();
    }

    const SimplexStatus p2 = iterate(/*phase1=*/false, result.iterations);
    if (p2 != SimplexStatus::optimal) {
      result.status = p2;
      return result;
    }
    if (!polish(result.iterations)) {
      result.status = SimplexStatus::numerical_error;
      return result;
    }
    extract(result);
    return result;
  }

 private:
  // Recompute the point from a fresh factorization and repair whatever
  // infeasibility the drift between refactorizations hid. Ensures "optimal"
  // always hands back a point feasible to within the certificate tolerance.
  bool polish(long& iterations) {
    for (int pass = 0; pass < 5; ++pass) {
      if (!refactor()) return false;
      if (xb_.minCoeff() >= -1e-7) return true;
      if (dual_iterate(iterations) != SimplexStatus::optimal) return false;
      if (iterate(/*phase1=*/false, iterations) != SimplexStatus::optimal) return false;
    }
    if (!refactor()) return false;
    return xb_.minCoeff() >= -1e-7;
  }
  void reset_cold() {
    const int rows = lp_.num_rows;
    basis_.resize(static_cast<std::size_t>(rows));
    in_basis_.assign(all_cols_.size(), false);
    for (int r = 0; r < rows; ++r) {
      basis_[static_cast<std::size_t>(r)] = n_struct_ + r;
      in_basis_[static_cast<std::size_t>(n_struct_ + r)] = true;
    }
    binv_ = Eigen::MatrixXd::Identity(rows, rows);
    xb_ = Eigen::Map<const Eigen::VectorXd>(lp_.rhs.data(), rows);
  }

  // Adopt the previous optimum's basis, completing it with the slacks of the
  // rows appended since. False when the input cannot seed a valid basis.
  bool install_warm_basis(const std::vector<int>& start_basis) {
    const int rows = lp_.num_rows;
    if (static_cast<int>(start_basis.size()) > rows) return false;
    basis_.clear();
    basis_.reserve(static_cast<std::size_t>(rows));
    in_basis_.assign(all_cols_.size(), false);
    for (int c : start_basis) {
      if (c < 0 || c >= static_cast<int>(all_cols_.size())) return false;
      if (is_art_[static_cast<std::size_t>(c)] || in_basis_[static_cast<std::size_t>(c)])
        return false;
      basis_.push_back(c);
      in_basis_[static_cast<std::size_t>(c)] = true;
    }
    for (int r = static_cast<int>(start_basis.size()); r < rows; ++r) {
      const int c = n_struct_ + r;
      if (is_art_[static_cast<std::size_t>(c)]) return false;  // appended row must carry a slack
      basis_.push_back(c);
      in_basis_[static_cast<std::size_t>(c)] = true;
    }
    return refactor();
  }

  void extract(SimplexResult& result) const {
    result.status = SimplexStatus::optimal;
    result.x.assign(static_cast<std::size_t>(n_struct_), 0.0);
    for (int r = 0; r < lp_.num_rows; ++r) {
      const int c = basis_[static_cast<std::size_t>(r)];
      if (c < n_struct_) result.x[static_cast<std::size_t>(c)] = std::max(0.0, xb_(r));
    }
    result.objective = 0.0;
    for (int c = 0; c < n_struct_; ++c)
      result.objective += lp_.cols[static_cast<std::size_t>(c)].cost *
                          result.x[static_cast<std::size_t>(c)];
    result.basis = basis_;
    const Eigen::VectorXd y = pricing_vector(false);
    result.duals.assign(y.data(), y.data() + lp_.num_rows);
  }

  double cost_of(int col, bool phase1) const {
    if (phase1) return is_art_[static_cast<std::size_t>(col)] ? 1.0 : 0.0;
    if (is_art_[static_cast<std::size_t>(col)]) return 0.0;
    return col < n_struct_ ? lp_.cols[static_cast<std::size_t>(col)].cost : 0.0;
  }

  double phase_objective(bool phase1) const {
    double obj = 0.0;
    for (int r = 0; r < lp_.num_rows; ++r)
      obj += cost_of(basis_[static_cast<std::size_t>(r)], phase1) * xb_(r);
    return obj;
  }

  Eigen::VectorXd pricing_vector(bool phase1) const {
    Eigen::VectorXd cb(lp_.num_rows);
    for (int r = 0; r < lp_.num_rows; ++r)
      cb(r) = cost_of(basis_[static_cast<std::size_t>(r)], phase1);
    return binv_.transpose() * cb;
  }

  double reduced_cost(int col, const Eigen::VectorXd& y, bool phase1) const {
    double d = cost_of(col, phase1);
    for (const auto& [r, v] : all_cols_[static_cast<std::size_t>(col)].a) d -= y(r) * v;
    return d;
  }

  Eigen::VectorXd ftran(int col) const {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(lp_.num_rows);
    for (const auto& [r, v] : all_cols_[static_cast<std::size_t>(col)].a) w += binv_.col(r) * v;
    return w;
  }

  void pivot(int enter, int leave_row, const Eigen::VectorXd& w, double theta) {
    xb_ -= theta * w;
    xb_(leave_row) = theta;
    for (int r = 0; r < lp_.num_rows; ++r)
      if (xb_(r) < 0.0 && xb_(r) > -1e-7) xb_(r) = 0.0;

    const double piv = w(leave_row);
    binv_.row(leave_row) /= piv;
    for (int r = 0; r < lp_.num_rows; ++r) {
      if (r == leave_row) continue;
      const double factor = w(r);
      if (factor != 0.0) binv_.row(r) -= factor * binv_.row(leave_row);
    }

    const int old = basis_[static_cast<std::size_t>(leave_row)];
    in_basis_[static_cast<std::size_t>(old)] = false;
    in_basis_[static_cast<std::size_t>(enter)] = true;
    basis_[static_cast<std::size_t>(leave_row)] = enter;
  }

  bool refactor() {
    const int rows = lp_.num_rows;
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(rows, rows);
    for (int r = 0; r < rows; ++r)
      for (const auto& [i, v] : all_cols_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(r)])].a)
        b(i, r) = v;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    binv_ = lu.inverse();
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(lp_.rhs.data(), rows);
    xb_ = binv_ * rhs;
    // Partial pivoting cannot flag singularity, so check the residual.
    if (!xb_.allFinite() || (b * xb_ - rhs).lpNorm<Eigen::Infinity>() > 1e-6 * (1.0 + rhs.lpNorm<Eigen::Infinity>()))
      return false;
    for (int r = 0; r < rows; ++r)
      if (xb_(r) < 0.0 && xb_(r) > -1e-6) xb_(r) = 0.0;
    return true;
  }

  // Entering column. Default is devex pricing: maximize d^2 / weight, where
  // the reference weights approximate steepest-edge norms. Plain Dantzig
  // stalls for tens of thousands of iterations on the degenerate plateaus of
  // these scheduling LPs; devex cuts that by an order of magnitude. Under
  // `bland` the lowest negative index wins. Artificials never re-enter.
  int choose_entering(bool phase1, bool bland, const Eigen::VectorXd& y) const {
    int best = -1;
    double best_score = 0.0;
    for (int c = 0; c < static_cast<int>(all_cols_.size()); ++c) {
      if (in_basis_[static_cast<std::size_t>(c)] || is_art_[static_cast<std::size_t>(c)]) continue;
      const double d = reduced_cost(c, y, phase1);
      if (d >= -opts_.tol) continue;
      if (bland) return c;
      const double score = d * d / devex_[static_cast<std::size_t>(c)];
      if (score > best_score) {
        best = c;
        best_score = score;
      }
    }
    return best;
  }

  // Forrest-Goldfarb devex update after pivoting column `enter` into row
  // `leave_row`. Needs the pivot row of the tableau, one btran plus a pass
  // over the columns; approximate weights only steer pricing, so the cheap
  // variant is safe.
  void update_devex(int enter, int leave_row, int leaving_col, const Eigen::VectorXd& w_enter) {
    const double pivot2 = w_enter(leave_row) * w_enter(leave_row);
    const double gamma_q = devex_[static_cast<std::size_t>(enter)];
    double biggest = 1.0;
    for (int c = 0; c < static_cast<int>(all_cols_.size()); ++c) {
      if (in_basis_[static_cast<std::size_t>(c)] || is_art_[static_cast<std::size_t>(c)] ||
          c == enter)
        continue;
      double alpha = 0.0;
      for (const auto& [r, v] : all_cols_[static_cast<std::size_t>(c)].a)
        alpha += pivot_row_(r) * v;
      if (alpha == 0.0) continue;
      double& g = devex_[static_cast<std::size_t>(c)];
      g = std::max(g, alpha * alpha / pivot2 * gamma_q);
      biggest = std::max(biggest, g);
    }
    devex_[static_cast<std::size_t>(leaving_col)] = std::max(gamma_q / pivot2, 1.0);
    biggest = std::max(biggest, devex_[static_cast<std::size_t>(leaving_col)]);
    if (biggest > 1e12) std::fill(devex_.begin(), devex_.end(), 1.0);
  }

  // Two-pass Harris ratio test. Pass 1 finds the loosest step that keeps every
  // basic value above -kFeasTol; pass 2 picks the largest pivot among rows
  // whose strict ratio fits under it. Trading a bounded sliver of infeasibility
  // for big pivots keeps binv well conditioned through the long degenerate
  // stretches these scheduling LPs produce. Under `bland` the strict min-ratio
  // rule with lowest-basis-index ties applies instead, which together with
  // lowest-index entering guarantees termination.
  int choose_leaving(const Eigen::VectorXd& w, bool bland) const {
    if (bland) {
      int leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (int r = 0; r < lp_.num_rows; ++r) {
        if (w(r) <= opts_.tol) continue;
        const double ratio = std::max(0.0, xb_(r)) / w(r);
        const bool better =
            ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && leave >= 0 &&
             basis_[static_cast<std::size_t>(r)] < basis_[static_cast<std::size_t>(leave)]);
        if (better) {
          best_ratio = std::min(best_ratio, ratio);
          leave = r;
        }
      }
      return leave;
    }

    double theta_max = std::numeric_limits<double>::infinity();
    for (int r = 0; r < lp_.num_rows; ++r)
      if (w(r) > opts_.tol) theta_max = std::min(theta_max, (xb_(r) + kFeasTol) / w(r));
    if (theta_max == std::numeric_limits<double>::infinity()) return -1;

    int leave = -1;
    for (int r = 0; r < lp_.num_rows; ++r) {
      if (w(r) <= opts_.tol) continue;
      if (std::max(0.0, xb_(r)) / w(r) <= theta_max && (leave < 0 || w(r) > w(leave))) leave = r;
    }
    return leave;
  }

  SimplexStatus iterate(bool phase1, long& iterations) {
    int degenerate_streak = 0;
    int since_refactor = 0;
    bool bland = false;
    devex_.assign(all_cols_.size(), 1.0);
    while (true) {
      if (iterations >= opts_.max_iterations) return SimplexStatus::iteration_limit;
      const Eigen::VectorXd y = pricing_vector(phase1);
      const int enter = choose_entering(phase1, bland, y);
      if (enter < 0) return SimplexStatus::optimal;

      const Eigen::VectorXd w = ftran(enter);
      const int leave = choose_leaving(w, bland);
      if (leave < 0) return SimplexStatus::unbounded;

      const double theta = std::max(0.0, xb_(leave)) / w(leave);
      const int leaving_col = basis_[static_cast<std::size_t>(leave)];
      pivot_row_ = binv_.row(leave);
      pivot(enter, leave, w, theta);
      update_devex(enter, leave, leaving_col, w);
      ++iterations;

      if (!xb_.allFinite()) {
        if (!refactor()) return SimplexStatus::numerical_error;
        since_refactor = 0;
      }

      if (theta <= opts_.tol) {
        // The lex ratio test already prevents cycling; Bland is a last resort
        // for long stalls where accumulated roundoff could defeat it.
        if (++degenerate_streak > 1000) bland = true;
      } else {
        degenerate_streak = 0;
        bland = false;
      }
      if (++since_refactor >= opts_.refactor_every) {
        if (!refactor()) return SimplexStatus::numerical_error;
        since_refactor = 0;
      }
    }
  }

  // Dual simplex: starting from a dual feasible basis, repeatedly kicks out
  // a negative basic value and brings in the column that keeps the reduced
  // costs nonnegative, until the point is primal feasible. Rows are chosen by
  // exact steepest edge, xb^2 over the squared binv row norm, which the dense
  // inverse makes as cheap as one matvec and which avoids the thrash plain
  // most-negative selection produces on degenerate bases. The ratio test
  // tolerates reduced costs within tol of zero and prefers the largest pivot
  // among near-tied ratios.
  SimplexStatus dual_iterate(long& iterations) {
    int since_refactor = 0;
    int degenerate_streak = 0;
    while (true) {
      if (iterations >= opts_.max_iterations) return SimplexStatus::iteration_limit;

      int leave = -1;
      double best_score = 0.0;
      for (int r = 0; r < lp_.num_rows; ++r) {
        if (xb_(r) >= -1e-7) continue;
        const double score = xb_(r) * xb_(r) / binv_.row(r).squaredNorm();
        if (score > best_score) {
          best_score = score;
          leave = r;
        }
      }
      if (leave < 0) return SimplexStatus::optimal;

      const Eigen::VectorXd y = pricing_vector(false);
      const Eigen::VectorXd beta = binv_.row(leave);
      int enter = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_alpha = 0.0;
      for (int c = 0; c < static_cast<int>(all_cols_.size()); ++c) {
        if (in_basis_[static_cast<std::size_t>(c)] || is_art_[static_cast<std::size_t>(c)])
          continue;
        double alpha = 0.0;
        for (const auto& [r, v] : all_cols_[static_cast<std::size_t>(c)].a) alpha += beta(r) * v;
        if (alpha >= -opts_.tol) continue;
        const double d = std::max(0.0, reduced_cost(c, y, false));
        const double ratio = d / -alpha;
        if (ratio < best_ratio - 1e-12 ||
            (ratio <= best_ratio + 1e-9 * (1.0 + best_ratio) && alpha < best_alpha)) {
          best_ratio = std::min(best_ratio, ratio);
          best_alpha = alpha;
          enter = c;
        }
      }
      if (enter < 0) return SimplexStatus::infeasible;  // the violated row cannot be repaired

      const Eigen::VectorXd w = ftran(enter);
      if (w(leave) >= -opts_.tol) {
        // ftran disagrees with the pivot-row probe: binv has drifted.
        if (!refactor()) return SimplexStatus::numerical_error;
        since_refactor = 0;
        continue;
      }
      const double theta = xb_(leave) / w(leave);
      pivot(enter, leave, w, theta);
      ++iterations;

      if (!xb_.allFinite()) {
        if (!refactor()) return SimplexStatus::numerical_error;
        since_refactor = 0;
      }
      if (best_ratio <= opts_.tol) {
        if (++degenerate_streak > 5000) return SimplexStatus::iteration_limit;
      } else {
        degenerate_streak = 0;
      }
      if (++since_refactor >= opts_.refactor_every) {
        if (!refactor()) return SimplexStatus::numerical_error;
        since_refactor = 0;
      }
    }
  }

  // After phase 1 some artificials may sit in the basis at value zero.
  // Swap each for any nonbasic real column with a nonzero pivot in its row.
  bool expel_artificials() {
    for (int r = 0; r < lp_.num_rows; ++r) {
      const int c = basis_[static_cast<std::size_t>(r)];
      if (!is_art_[static_cast<std::size_t>(c)]) continue;
      bool swapped = false;
      for (int j = 0; j < static_cast<int>(all_cols_.size()) && !swapped; ++j) {
        if (in_basis_[static_cast<std::size_t>(j)] || is_art_[static_cast<std::size_t>(j)])
          continue;
        double piv = 0.0;
        for (const auto& [i, v] : all_cols_[static_cast<std::size_t>(j)].a) piv += binv_(r, i) * v;
        if (std::abs(piv) > 1e-7) {
          pivot(j, r, ftran(j), 0.0);
          swapped = true;
        }
      }
      if (!swapped) return false;  // dependent equality row
    }
    return true;
  }

  // Basic values may dip this far below zero between refactorizations.
  static constexpr double kFeasTol = 1e-9;

  const SparseLp& lp_;
  SimplexOptions opts_;
  int n_struct_ = 0;
  std::vector<SparseLp::Col> all_cols_;
  std::vector<int> basis_;
  std::vector<bool> in_basis_;
  std::vector<bool> is_art_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  std::vector<double> devex_;
  Eigen::VectorXd pivot_row_;
};

}  // namespace

SimplexResult solve_simplex(const SparseLp& lp, const SimplexOptions& opts) {
  if (lp.num_rows == 0) {
    SimplexResult result;
    result.status = SimplexStatus::optimal;
    result.x.assign(lp.cols.size(), 0.0);
    return result;
  }
  RevisedSimplex solver(lp, opts);
  return solver.run();
}

SimplexResult solve_simplex_warm(const SparseLp& lp, const std::vector<int>& start_basis,
                                 const SimplexOptions& opts) {
  if (lp.num_rows == 0) {
    SimplexResult result;
    result.status = SimplexStatus::optimal;
    result.x.assign(lp.cols.size(), 0.0);
    return result;
  }
  RevisedSimplex solver(lp, opts);
  return solver.run_warm(start_basis);
}

}  // namespace coflow
