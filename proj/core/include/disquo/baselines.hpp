#pragma once

#include <cstdint>
#include <deque>
#include <string_view>
#include <vector>

#include "disquo/slot_engine.hpp"
#include "disquo/switch_state.hpp"
#include "disquo/weights.hpp"

namespace disquo {

enum class BaselineKind { kRrRr, kLqfRr };

BaselineKind parse_baseline(std::string_view s);
std::string_view to_string(BaselineKind k);

/// RR-RR: inputs and outputs each round-robin over eligible crosspoints.
/// LQF-RR: inputs take the longest eligible VOQ (ties to the lowest output),
/// outputs round-robin. Pointers move past the served index only on service.
PortSchedules baseline_step(BaselineKind kind, const SwitchState& state, RoundRobinPointers& rr);

class BaselineScheduler final : public Scheduler {
 public:
  BaselineScheduler(BaselineKind kind, int n) : kind_(kind), rr_(n) {}

  std::string_view name() const override { return to_string(kind_); }
  std::vector<int> input_phase(const SwitchState& state) override;
  std::vector<int> output_phase(const SwitchState& state, std::span<const int> input_to) override;

  const RoundRobinPointers& pointers() const { return rr_; }

 private:
  BaselineKind kind_;
  RoundRobinPointers rr_;
  std::vector<int> output_from_;
};

/// Centralized maximum weight matching on W = f(Q) over pairs that can send,
/// outputs serving their matched buffer or else round-robin.
class MwmScheduler final : public Scheduler {
 public:
  explicit MwmScheduler(int n, GChoice g = GChoice::kLogLog) : g_(g), rr_(n) {}

  std::string_view name() const override { return "mwm"; }
  std::vector<int> input_phase(const SwitchState& state) override;
  std::vector<int> output_phase(const SwitchState& state, std::span<const int> input_to) override;

 private:
  GChoice g_;
  RoundRobinPointers rr_;
  std::vector<int> matched_out_;  // output -> input from the matching
};

/// Ideal output-queued switch: every arrival joins its output's FIFO at
/// once; each output sends one cell per slot. Serves before enqueueing, the
/// same ordering as the crossbar engine, so a lone cell has delay 1.
class OutputQueuedSwitch {
 public:
  explicit OutputQueuedSwitch(int n);

  int n_ports() const { return static_cast<int>(fifo_.size()); }
  std::int64_t clock() const { return clock_; }
  std::int64_t backlog() const { return backlog_; }

  // Departures of this slot, then arrivals; clock + 1.
  std::vector<Departure> step(const std::vector<Pair>& arrivals);

 private:
  std::vector<std::deque<std::pair<std::int64_t, int>>> fifo_;  // (arrival slot, input)
  std::int64_t clock_ = 0;
  std::int64_t backlog_ = 0;
};

std::vector<Departure> oq_reference_step(OutputQueuedSwitch& oq, const std::vector<Pair>& arrivals);

}  // namespace disquo
