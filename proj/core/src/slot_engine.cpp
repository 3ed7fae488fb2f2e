#include "disquo/slot_engine.hpp"

#include <string>

namespace disquo {

PortSchedules derive_port_schedules(const DisquoSchedule& x, const SwitchState& state,
                                    FreePortPolicy policy, const Permutation* h_next,
                                    RoundRobinPointers& rr) {
  const int n = state.n_ports();
  const int k = state.buffer_cap();
  if (x.size() != n) throw std::invalid_argument("schedule size does not match the switch");
  if (h_next && h_next->size() != n) throw std::invalid_argument("h_next size does not match the switch");
  if (static_cast<int>(rr.input.size()) != n) rr = RoundRobinPointers(n);

  PortSchedules ps(n);
  auto input_ok = [&](int i, int j) { return state.queue(i, j) > 0 && state.xbuf(i, j) < k; };

  for (int i = 0; i < n; ++i) {
    const int j = x.output_of(i);
    if (j != kNone) {
      if (input_ok(i, j)) ps.input_to[i] = j;
      continue;
    }
    if (policy == FreePortPolicy::kNone) continue;
    if (h_next && input_ok(i, h_next->output_of(i))) {
      ps.input_to[i] = h_next->output_of(i);
      continue;
    }
    const int pick = round_robin_pick(n, rr.input[i], [&](int c) { return input_ok(i, c); });
    if (pick != kNone) {
      ps.input_to[i] = pick;
      rr.input[i] = (pick + 1) % n;
    }
  }

  // Occupancy once this slot's transfers have landed.
  auto occupied = [&](int i, int j) { return state.xbuf(i, j) + (ps.input_to[i] == j ? 1 : 0) > 0; };

  for (int j = 0; j < n; ++j) {
    const int i = x.input_of(j);
    if (i != kNone) {
      if (occupied(i, j)) ps.output_from[j] = i;
      continue;
    }
    if (policy == FreePortPolicy::kNone) continue;
    if (h_next && occupied(h_next->input_of(j), j)) {
      ps.output_from[j] = h_next->input_of(j);
      continue;
    }
    const int pick = round_robin_pick(n, rr.output[j], [&](int r) { return occupied(r, j); });
    if (pick != kNone) {
      ps.output_from[j] = pick;
      rr.output[j] = (pick + 1) % n;
    }
  }
  return ps;
}

void validate_input_schedule(const SwitchState& state, std::span<const int> input_to) {
  const int n = state.n_ports();
  if (static_cast<int>(input_to.size()) != n) throw InfeasibleSchedule("input schedule has wrong size");
  for (int i = 0; i < n; ++i) {
    const int j = input_to[i];
    if (j == kNone) continue;
    if (j < 0 || j >= n) throw InfeasibleSchedule("input schedule names a nonexistent output");
    if (state.queue(i, j) <= 0)
      throw InfeasibleSchedule("input " + std::to_string(i) + " scheduled from empty VOQ to " + std::to_string(j));
    if (state.xbuf(i, j) >= state.buffer_cap())
      throw InfeasibleSchedule("input " + std::to_string(i) + " scheduled into full buffer " + std::to_string(j));
  }
}

void validate_output_schedule(const SwitchState& state, std::span<const int> output_from) {
  const int n = state.n_ports();
  if (static_cast<int>(output_from.size()) != n) throw InfeasibleSchedule("output schedule has wrong size");
  for (int j = 0; j < n; ++j) {
    const int i = output_from[j];
    if (i == kNone) continue;
    if (i < 0 || i >= n) throw InfeasibleSchedule("output schedule names a nonexistent input");
    if (state.xbuf(i, j) <= 0)
      throw InfeasibleSchedule("output " + std::to_string(j) + " scheduled from empty buffer of input " + std::to_string(i));
  }
}

void step_slot(SwitchState& state, Scheduler& scheduler, TrafficSource& traffic, Rng& rng,
               SlotReport& report) {
  const int n = state.n_ports();
  if (traffic.n_ports() != n) throw std::invalid_argument("traffic and switch sizes differ");
  report.clear();
  report.slot = state.clock();

  // Phase I + II.
  std::vector<int> input_to = scheduler.input_phase(state);
  validate_input_schedule(state, input_to);
  for (int i = 0; i < n; ++i) {
    if (input_to[i] == kNone) continue;
    state.transfer(i, input_to[i]);
    report.input_transfers.emplace_back(i, input_to[i]);
  }

  // Phase III.
  std::vector<int> output_from = scheduler.output_phase(state, input_to);
  validate_output_schedule(state, output_from);
  for (int j = 0; j < n; ++j) {
    const int i = output_from[j];
    if (i == kNone) continue;
    const std::int64_t stamp = state.depart(i, j);
    report.output_departures.push_back({i, j, state.clock() - stamp});
  }

  // Arrivals land after service; first eligible next slot.
  static thread_local std::vector<Pair> arrivals;
  traffic.generate(rng, arrivals);
  for (auto [i, j] : arrivals) {
    state.enqueue(i, j, state.clock());
    report.arrivals.push_back({i, j, state.clock()});
  }

  if (const DisquoSchedule* x = scheduler.disquo_schedule()) report.schedule = *x;
  report.port_schedules.input_to = std::move(input_to);
  report.port_schedules.output_from = std::move(output_from);
  state.advance_clock();
}

SlotReport step_slot(SwitchState& state, Scheduler& scheduler, TrafficSource& traffic, Rng& rng) {
  SlotReport report;
  step_slot(state, scheduler, traffic, rng, report);
  return report;
}

}  // namespace disquo
