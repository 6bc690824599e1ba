#pragma once

#include <iosfwd>
#include <map>

#include "coflow/horizon.hpp"
#include "coflow/instance.hpp"

namespace coflow {

// One linear constraint; coeffs hold (column, coefficient) with columns
// strictly ascending.
struct LpRow {
  enum class Kind { assign, cap_source, cap_sink, completion };
  Kind kind;
  int port = 0;  // server id, capacity rows only
  int slot = 0;  // time slot, capacity rows only
  FlowKey flow;  // assign / completion rows only
  char sense = '<';
  double rhs = 0.0;
  std::vector<std::pair<int, double>> coeffs;
};

// Time-indexed relaxation. Columns: one start variable per (flow, t) with
// t in [release, F], grouped per flow and ordered by (source, sink, task),
// followed by one completion variable per task.
//
// Rows: one assignment equality per flow and one completion row per flow
// are stored in `base_rows`. Capacity rows exist for every server port and
// slot with at least one nonzero coefficient (a flow started at t occupies
// its ports in slot s with probability P(S >= s - t + 1)); there are
// O(m * horizon) of them, so they are synthesized on demand instead of
// stored.
struct LpModel {
  struct YBlock {
    FlowKey key;
    int first_col = 0;
    int t0 = 0;  // release
    int t1 = 0;  // horizon F
    DiscreteDist dist;
  };

  int m = 0;
  int horizon = 0;
  int max_size = 0;  // largest flow size; capacity slots run to horizon + max_size - 1
  std::vector<double> obj;
  std::vector<LpRow> base_rows;
  std::vector<YBlock> yblocks;  // sorted by key
  std::map<int, int> c_col;     // task id -> column

  int num_cols() const { return static_cast<int>(obj.size()); }
  // -1 when t is outside the flow's column range.
  int y_col(const FlowKey& key, int t) const;
  const YBlock* find_block(const FlowKey& key) const;
  std::string col_name(int col) const;

  // The capacity row for one port and slot; empty coeffs when no flow can
  // load that port in that slot.
  LpRow capacity_row(LpRow::Kind kind, int port, int slot) const;
  // Every nonempty capacity row, source ports then sink ports, slots
  // ascending. Materializes O(m * horizon) rows; meant for export/tests.
  std::vector<LpRow> capacity_rows() const;
  // capacity_rows().size() without materializing the rows.
  int num_capacity_rows() const;
};

LpModel build_lp(const Instance& inst, int horizon);
inline LpModel build_lp(const Instance& inst, const Horizon& h) { return build_lp(inst, h.F); }

// Deterministic CPLEX-style LP text; same model, same bytes.
void write_lp_format(const LpModel& model, std::ostream& out);

}  // namespace coflow
