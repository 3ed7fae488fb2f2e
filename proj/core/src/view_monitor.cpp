#include "disquo/view_monitor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace disquo {

std::vector<Pair> view_consistency_check(std::span<const int> input_rows, std::span<const int> output_cols) {
  if (input_rows.size() != output_cols.size()) throw std::invalid_argument("view sizes differ");
  const int n = static_cast<int>(input_rows.size());
  std::vector<Pair> out;
  for (int i = 0; i < n; ++i) {
    const int j = input_rows[i];
    if (j != kNone && output_cols[j] != i) out.emplace_back(i, j);
  }
  for (int j = 0; j < n; ++j) {
    const int i = output_cols[j];
    if (i != kNone && input_rows[i] != j) out.emplace_back(i, j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view to_string(DivergenceClass c) {
  switch (c) {
    case DivergenceClass::kSignalStarved: return "signal-starved";
    case DivergenceClass::kProbeHazard: return "probe-hazard";
    case DivergenceClass::kInherited: return "inherited";
    case DivergenceClass::kUnclassified: return "unclassified";
  }
  return "?";
}

ViewMonitor::ViewMonitor(int n, bool fatal) : n_(n), fatal_(fatal) {}

std::int64_t ViewMonitor::total_new() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

const std::vector<Divergence>& ViewMonitor::observe(const DistributedDisquo& sched, const SwitchState& state) {
  const auto rows = sched.input_rows();
  const auto cols = sched.output_cols();
  const DistributedTrace& trace = sched.last_trace();
  const std::vector<Pair> pairs = view_consistency_check(rows, cols);

  std::vector<std::uint8_t> row_touched(n_, 0), col_touched(n_, 0);
  for (const auto& d : current_) {
    row_touched[d.input] = 1;
    col_touched[d.output] = 1;
  }

  std::vector<Divergence> next;
  next.reserve(pairs.size());
  for (auto [i, j] : pairs) {
    const bool input_claims = rows[i] == j;
    auto prev = std::find_if(current_.begin(), current_.end(), [&](const Divergence& d) {
      return d.input == i && d.output == j && d.input_claims == input_claims;
    });
    if (prev != current_.end()) {
      next.push_back(*prev);
      continue;
    }
    DivergenceClass cls = DivergenceClass::kUnclassified;
    const bool in_h = trace.h.size() == n_ && trace.h.output_of(i) == j;
    if (in_h && input_claims && trace.inputs[i].starved) {
      cls = DivergenceClass::kSignalStarved;
    } else if (std::find(hazards_.begin(), hazards_.end(), Pair{i, j}) != hazards_.end()) {
      cls = DivergenceClass::kProbeHazard;
    } else if (row_touched[i] || col_touched[j]) {
      cls = DivergenceClass::kInherited;
    }
    ++counts_[static_cast<int>(cls)];
    next.push_back({trace.slot, i, j, input_claims, cls});
    if (cls == DivergenceClass::kUnclassified && fatal_) {
      current_ = std::move(next);
      throw UnclassifiedDivergence("unclassified view divergence at slot " + std::to_string(trace.slot) +
                                   " on (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  }
  current_ = std::move(next);

  hazards_.clear();
  if (trace.h_next.size() == n_) {
    for (int i = 0; i < n_; ++i) {
      if (rows[i] != kNone) continue;
      const int j = trace.h_next.output_of(i);
      if (cols[j] != kNone && cols[j] != i && state.xbuf(i, j) == 0) hazards_.emplace_back(i, j);
    }
  }
  hazards_seen_ += static_cast<std::int64_t>(hazards_.size());
  ++slots_;
  return current_;
}

}  // namespace disquo
