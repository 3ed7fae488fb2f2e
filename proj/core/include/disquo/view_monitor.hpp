#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "disquo/distributed.hpp"
#include "disquo/schedule.hpp"
#include "disquo/switch_state.hpp"

namespace disquo {

/// Every (i, j) on which exactly one of input i's row and output j's column claims X_ij = 1.
std::vector<Pair> view_consistency_check(std::span<const int> input_rows, std::span<const int> output_cols);

enum class DivergenceClass {
  // (i, j) in H(n) turned or stayed on at the input but no cell reached CB_ij.
  kSignalStarved,
  // Input i was free at the end of the previous slot with CB_ij empty while
  // output j was busy elsewhere, and (i, j) was next in H: the empty buffer
  // wrongly reads as "output free".
  kProbeHazard,
  // Row i or column j was already diverged in the previous slot.
  kInherited,
  kUnclassified,
};

inline constexpr int kDivergenceClasses = 4;

std::string_view to_string(DivergenceClass c);

struct Divergence {
  std::int64_t slot;
  int input;
  int output;
  bool input_claims;  // true: input side has X_ij = 1, output side 0
  DivergenceClass cls;
};

class UnclassifiedDivergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Watches a DistributedDisquo run slot by slot. Call observe() after each
/// step_slot(). New divergences get a class; ones that persist keep theirs.
class ViewMonitor {
 public:
  explicit ViewMonitor(int n, bool fatal = true);

  const std::vector<Divergence>& observe(const DistributedDisquo& sched, const SwitchState& state);

  const std::vector<Divergence>& current() const { return current_; }
  // Count of newly appearing divergences by class.
  const std::array<std::int64_t, kDivergenceClasses>& new_counts() const { return counts_; }
  std::int64_t total_new() const;
  std::int64_t unclassified() const { return counts_[static_cast<int>(DivergenceClass::kUnclassified)]; }
  std::int64_t hazards_seen() const { return hazards_seen_; }
  std::int64_t slots() const { return slots_; }

 private:
  int n_;
  bool fatal_;
  std::vector<Divergence> current_;
  std::vector<Pair> hazards_;  // recorded at the end of the previous slot
  std::array<std::int64_t, kDivergenceClasses> counts_{};
  std::int64_t hazards_seen_ = 0;
  std::int64_t slots_ = 0;
};

}  // namespace disquo
