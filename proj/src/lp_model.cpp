#include "coflow/lp_model.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "coflow/instance_io.hpp"

namespace coflow {

int LpModel::y_col(const FlowKey& key, int t) const {
  const YBlock* block = find_block(key);
  if (block == nullptr || t < block->t0 || t > block->t1) return -1;
  return block->first_col + (t - block->t0);
}

const LpModel::YBlock* LpModel::find_block(const FlowKey& key) const {
  auto it = std::lower_bound(yblocks.begin(), yblocks.end(), key,
                             [](const YBlock& b, const FlowKey& k) { return b.key < k; });
  if (it == yblocks.end() || !(it->key == key)) return nullptr;
  return &*it;
}

std::string LpModel::col_name(int col) const {
  for (const auto& block : yblocks) {
    const int span = block.t1 - block.t0 + 1;
    if (col >= block.first_col && col < block.first_col + span) {
      return "y_" + std::to_string(block.key.source) + "_" + std::to_string(block.key.sink) +
             "_" + std::to_string(block.key.task) + "_" +
             std::to_string(block.t0 + (col - block.first_col));
    }
  }
  for (const auto& [task, c] : c_col)
    if (c == col) return "C_" + std::to_string(task);
  throw std::out_of_range("col_name: bad column");
}

LpRow LpModel::capacity_row(LpRow::Kind kind, int port, int slot) const {
  if (kind != LpRow::Kind::cap_source && kind != LpRow::Kind::cap_sink)
    throw std::invalid_argument("capacity_row: not a capacity kind");
  LpRow row;
  row.kind = kind;
  row.port = port;
  row.slot = slot;
  row.sense = '<';
  row.rhs = 1.0;
  for (const auto& block : yblocks) {
    const int p = kind == LpRow::Kind::cap_source ? block.key.source : block.key.sink;
    if (p != port) continue;
    const int lo = std::max(block.t0, slot - block.dist.max_size() + 1);
    const int hi = std::min(block.t1, slot);
    for (int t = lo; t <= hi; ++t) {
      const double tail = block.dist.tail(slot - t);
      if (tail > 0.0) row.coeffs.emplace_back(block.first_col + (t - block.t0), tail);
    }
  }
  std::sort(row.coeffs.begin(), row.coeffs.end());
  return row;
}

std::vector<LpRow> LpModel::capacity_rows() const {
  std::vector<LpRow> rows;
  for (const LpRow::Kind kind : {LpRow::Kind::cap_source, LpRow::Kind::cap_sink}) {
    for (int port = 1; port <= m; ++port) {
      for (int slot = 0; slot <= horizon + max_size - 1; ++slot) {
        LpRow row = capacity_row(kind, port, slot);
        if (!row.coeffs.empty()) rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

int LpModel::num_capacity_rows() const {
  // A (port, slot) row is nonempty iff some block on that port covers the
  // slot: every tail value inside [t0, t1 + max_size - 1] is positive.
  int count = 0;
  const int slots = horizon + max_size;
  for (const LpRow::Kind kind : {LpRow::Kind::cap_source, LpRow::Kind::cap_sink}) {
    for (int port = 1; port <= m; ++port) {
      std::vector<int> diff(static_cast<std::size_t>(slots) + 1, 0);
      for (const auto& block : yblocks) {
        const int p = kind == LpRow::Kind::cap_source ? block.key.source : block.key.sink;
        if (p != port) continue;
        const int hi = std::min(block.t1 + block.dist.max_size() - 1, slots - 1);
        diff[static_cast<std::size_t>(block.t0)]++;
        diff[static_cast<std::size_t>(hi) + 1]--;
      }
      int cover = 0;
      for (int s = 0; s < slots; ++s) {
        cover += diff[static_cast<std::size_t>(s)];
        if (cover > 0) count++;
      }
    }
  }
  return count;
}

LpModel build_lp(const Instance& inst, int horizon) {
  if (horizon < 0) throw std::invalid_argument("build_lp: horizon must be >= 0");
  if (inst.max_release() > horizon)
    throw std::invalid_argument("build_lp: horizon smaller than a release time");

  LpModel model;
  model.m = inst.m;
  model.horizon = horizon;
  model.max_size = inst.max_flow_size();

  const auto flows = inst.all_flows();
  int next_col = 0;
  for (const auto& [key, flow] : flows) {
    LpModel::YBlock block;
    block.key = key;
    block.first_col = next_col;
    block.t0 = flow->release;
    block.t1 = horizon;
    block.dist = flow->dist;
    next_col += block.t1 - block.t0 + 1;
    model.yblocks.push_back(std::move(block));
  }
  for (const auto& task : inst.tasks) {
    model.c_col[task.id] = next_col++;
  }
  model.obj.assign(static_cast<std::size_t>(next_col), 0.0);
  for (const auto& task : inst.tasks)
    model.obj[static_cast<std::size_t>(model.c_col.at(task.id))] = task.weight;

  // Every flow starts exactly once.
  for (const auto& block : model.yblocks) {
    LpRow row;
    row.kind = LpRow::Kind::assign;
    row.flow = block.key;
    row.sense = '=';
    row.rhs = 1.0;
    for (int t = block.t0; t <= block.t1; ++t)
      row.coeffs.emplace_back(block.first_col + (t - block.t0), 1.0);
    model.base_rows.push_back(std::move(row));
  }

  // Task completion dominates every member flow's expected completion.
  for (const auto& block : model.yblocks) {
    LpRow row;
    row.kind = LpRow::Kind::completion;
    row.flow = block.key;
    row.sense = '<';
    row.rhs = 0.0;
    for (int t = block.t0; t <= block.t1; ++t)
      row.coeffs.emplace_back(block.first_col + (t - block.t0), t + block.dist.mean());
    row.coeffs.emplace_back(model.c_col.at(block.key.task), -1.0);
    model.base_rows.push_back(std::move(row));
  }

  return model;
}

namespace {

void write_terms(std::ostream& out, const LpModel& model,
                 const std::vector<std::pair<int, double>>& coeffs) {
  bool first = true;
  for (const auto& [col, coef] : coeffs) {
    if (first) {
      if (coef < 0.0) out << "- ";
      first = false;
    } else {
      out << (coef < 0.0 ? " - " : " + ");
    }
    const double mag = coef < 0.0 ? -coef : coef;
    if (mag != 1.0) out << format_real(mag) << " ";
    out << model.col_name(col);
  }
}

const char* row_tag(LpRow::Kind kind) {
  switch (kind) {
    case LpRow::Kind::assign: return "asg";
    case LpRow::Kind::cap_source: return "caps";
    case LpRow::Kind::cap_sink: return "capk";
    case LpRow::Kind::completion: return "cpl";
  }
  return "row";
}

std::string row_name(const LpRow& row) {
  std::string name = row_tag(row.kind);
  if (row.kind == LpRow::Kind::cap_source || row.kind == LpRow::Kind::cap_sink)
    return name + "_" + std::to_string(row.port) + "_" + std::to_string(row.slot);
  return name + "_" + std::to_string(row.flow.source) + "_" + std::to_string(row.flow.sink) +
         "_" + std::to_string(row.flow.task);
}

void write_row(std::ostream& out, const LpModel& model, const LpRow& row) {
  out << " " << row_name(row) << ": ";
  write_terms(out, model, row.coeffs);
  out << (row.sense == '=' ? " = " : " <= ") << format_real(row.rhs) << "\n";
}

}  // namespace

void write_lp_format(const LpModel& model, std::ostream& out) {
  out << "Minimize\n obj: ";
  std::vector<std::pair<int, double>> obj_terms;
  for (int col = 0; col < model.num_cols(); ++col)
    if (model.obj[static_cast<std::size_t>(col)] != 0.0)
      obj_terms.emplace_back(col, model.obj[static_cast<std::size_t>(col)]);
  write_terms(out, model, obj_terms);
  out << "\nSubject To\n";
  for (const auto& row : model.base_rows)
    if (row.kind == LpRow::Kind::assign) write_row(out, model, row);
  for (const auto& row : model.capacity_rows()) write_row(out, model, row);
  for (const auto& row : model.base_rows)
    if (row.kind == LpRow::Kind::completion) write_row(out, model, row);
  out << "End\n";
}

}  // namespace coflow
