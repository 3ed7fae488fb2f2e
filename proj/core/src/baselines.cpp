#include "disquo/baselines.hpp"

#include <stdexcept>
#include <string>

#include "disquo/mwm.hpp"

namespace disquo {

BaselineKind parse_baseline(std::string_view s) {
  if (s == "rr-rr") return BaselineKind::kRrRr;
  if (s == "lqf-rr") return BaselineKind::kLqfRr;
  throw std::invalid_argument("unknown baseline: " + std::string(s));
}

std::string_view to_string(BaselineKind k) { return k == BaselineKind::kRrRr ? "rr-rr" : "lqf-rr"; }

namespace {

std::vector<int> round_robin_outputs(const SwitchState& state, std::span<const int> input_to,
                                     std::vector<int>& pointers) {
  const int n = state.n_ports();
  std::vector<int> out(n, kNone);
  for (int j = 0; j < n; ++j) {
    const int pick = round_robin_pick(n, pointers[j], [&](int i) {
      return state.xbuf(i, j) + (input_to[i] == j ? 1 : 0) > 0;
    });
    if (pick != kNone) {
      out[j] = pick;
      pointers[j] = (pick + 1) % n;
    }
  }
  return out;
}

}  // namespace

PortSchedules baseline_step(BaselineKind kind, const SwitchState& state, RoundRobinPointers& rr) {
  const int n = state.n_ports();
  const int k = state.buffer_cap();
  if (static_cast<int>(rr.input.size()) != n) rr = RoundRobinPointers(n);
  PortSchedules ps(n);
  auto eligible = [&](int i, int j) { return state.queue(i, j) > 0 && state.xbuf(i, j) < k; };

  for (int i = 0; i < n; ++i) {
    if (kind == BaselineKind::kRrRr) {
      const int pick = round_robin_pick(n, rr.input[i], [&](int j) { return eligible(i, j); });
      if (pick != kNone) {
        ps.input_to[i] = pick;
        rr.input[i] = (pick + 1) % n;
      }
    } else {
      int best = kNone;
      for (int j = 0; j < n; ++j)
        if (eligible(i, j) && (best == kNone || state.queue(i, j) > state.queue(i, best))) best = j;
      ps.input_to[i] = best;
    }
  }
  ps.output_from = round_robin_outputs(state, ps.input_to, rr.output);
  return ps;
}

std::vector<int> BaselineScheduler::input_phase(const SwitchState& state) {
  PortSchedules ps = baseline_step(kind_, state, rr_);
  output_from_ = std::move(ps.output_from);
  return std::move(ps.input_to);
}

std::vector<int> BaselineScheduler::output_phase(const SwitchState&, std::span<const int>) {
  return output_from_;
}

std::vector<int> MwmScheduler::input_phase(const SwitchState& state) {
  const int n = state.n_ports();
  Matrix<double> w(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (state.queue(i, j) > 0 && state.xbuf(i, j) < state.buffer_cap())
        w(i, j) = weight_f(static_cast<double>(state.queue(i, j)), g_);
  const MatchingResult m = mwm(w, TieBreak::kAny);
  std::vector<int> input_to(n, kNone);
  matched_out_.assign(n, kNone);
  for (auto [i, j] : m.matching) {
    input_to[i] = j;
    matched_out_[j] = i;
  }
  return input_to;
}

std::vector<int> MwmScheduler::output_phase(const SwitchState& state, std::span<const int>) {
  const int n = state.n_ports();
  if (static_cast<int>(rr_.output.size()) != n) rr_ = RoundRobinPointers(n);
  std::vector<int> out(n, kNone);
  for (int j = 0; j < n; ++j) {
    const int i = matched_out_[j];
    if (i != kNone && state.xbuf(i, j) > 0) {
      out[j] = i;
      continue;
    }
    const int pick = round_robin_pick(n, rr_.output[j], [&](int r) { return state.xbuf(r, j) > 0; });
    if (pick != kNone) {
      out[j] = pick;
      rr_.output[j] = (pick + 1) % n;
    }
  }
  return out;
}

OutputQueuedSwitch::OutputQueuedSwitch(int n) : fifo_(n > 0 ? n : 0) {
  if (n < 1) throw std::invalid_argument("OutputQueuedSwitch: n must be >= 1");
}

std::vector<Departure> OutputQueuedSwitch::step(const std::vector<Pair>& arrivals) {
  std::vector<Departure> out;
  for (int j = 0; j < n_ports(); ++j) {
    if (fifo_[j].empty()) continue;
    out.push_back({fifo_[j].front().second, j, clock_ - fifo_[j].front().first});
    fifo_[j].pop_front();
    --backlog_;
  }
  for (auto [i, j] : arrivals) {
    if (j < 0 || j >= n_ports()) throw std::out_of_range("OutputQueuedSwitch: bad output");
    fifo_[j].emplace_back(clock_, i);
    ++backlog_;
  }
  ++clock_;
  return out;
}

std::vector<Departure> oq_reference_step(OutputQueuedSwitch& oq, const std::vector<Pair>& arrivals) {
  return oq.step(arrivals);
}

}  // namespace disquo
