#pragma once

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "disquo/random.hpp"
#include "disquo/schedule.hpp"
#include "disquo/switch_state.hpp"
#include "disquo/traffic.hpp"

namespace disquo {

/// A scheduler proposed a transfer that violates the port constraints
/// (at most one cell per port, no write to a full buffer, no read from an
/// empty one). Always a bug, never corrected silently.
class InfeasibleSchedule : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A slot runs in three phases. Phase I (permutation) and Phase II (input
/// decisions) happen inside input_phase; Phase III inside output_phase,
/// which sees the crosspoint buffers after the input transfers landed.
class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual std::string_view name() const = 0;

  // Returns S^I as input -> output (kNone if idle).
  virtual std::vector<int> input_phase(const SwitchState& state) = 0;
  // Returns S^O as output -> input (kNone if idle).
  virtual std::vector<int> output_phase(const SwitchState& state, std::span<const int> input_to) = 0;

  // The DISQUO schedule X(n) of the slot just scheduled, if this scheduler has one.
  virtual const DisquoSchedule* disquo_schedule() const { return nullptr; }
};

enum class FreePortPolicy {
  kRoundRobin,  // designee first, then per-port round-robin pointer
  kNone,        // free ports stay idle
};

/// Per-port round-robin pointers: the next index a port starts searching at.
struct RoundRobinPointers {
  RoundRobinPointers() = default;
  explicit RoundRobinPointers(int n) : input(n, 0), output(n, 0) {}
  std::vector<int> input;
  std::vector<int> output;
};

/// First index at or after `start` (cyclically) satisfying `eligible`, or kNone.
template <typename Pred>
int round_robin_pick(int n, int start, Pred&& eligible) {
  for (int step = 0; step < n; ++step) {
    const int idx = (start + step) % n;
    if (eligible(idx)) return idx;
  }
  return kNone;
}

/// Turns X(n) into S^I and S^O. Active pairs send iff Q_ij > 0 and
/// B_ij < K, and serve iff the buffer holds a cell once the input transfers
/// have landed. Free inputs try the h_next designee first and then fall back
/// to the round-robin pointer; free outputs likewise over non-empty buffers.
PortSchedules derive_port_schedules(const DisquoSchedule& x, const SwitchState& state,
                                    FreePortPolicy policy, const Permutation* h_next,
                                    RoundRobinPointers& rr);

/// Checks Eqs. (7)-(8) style feasibility; throws InfeasibleSchedule.
void validate_input_schedule(const SwitchState& state, std::span<const int> input_to);
void validate_output_schedule(const SwitchState& state, std::span<const int> output_from);

/// Advances the switch one slot: scheduler Phase I/II, input transfers,
/// scheduler Phase III, departures, then arrivals, then clock + 1.
void step_slot(SwitchState& state, Scheduler& scheduler, TrafficSource& traffic, Rng& rng,
               SlotReport& report);
SlotReport step_slot(SwitchState& state, Scheduler& scheduler, TrafficSource& traffic, Rng& rng);

}  // namespace disquo
