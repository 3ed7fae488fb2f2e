#include "disquo/distributed.hpp"

#include <string>

namespace disquo {

InputLocalView::InputLocalView(const SwitchState& state, int input, int partner) : i_(input) {
  refresh(state, partner);
}

void InputLocalView::refresh(const SwitchState& state, int partner) {
  partner_ = partner;
  const auto q = state.queues().row(i_);
  const auto b = state.xbufs().row(i_);
  q_.assign(q.begin(), q.end());
  b_.assign(b.begin(), b.end());
}

std::int64_t InputLocalView::queue_at(int i, int j) const {
  if (i != i_) throw LocalityViolation("input " + std::to_string(i_) + " read VOQ of input " + std::to_string(i));
  return q_.at(j);
}

int InputLocalView::buffer_at(int i, int j) const {
  if (i != i_) throw LocalityViolation("input " + std::to_string(i_) + " read buffer row " + std::to_string(i));
  return b_.at(j);
}

OutputLocalView::OutputLocalView(const SwitchState& post_transfer, int output, int partner,
                                 std::span<const int> input_to)
    : j_(output) {
  refresh(post_transfer, partner, input_to);
}

void OutputLocalView::refresh(const SwitchState& post_transfer, int partner, std::span<const int> input_to) {
  partner_ = partner;
  const int n = post_transfer.n_ports();
  b_.resize(n);
  arrived_.resize(n);
  for (int i = 0; i < n; ++i) {
    b_[i] = post_transfer.xbuf(i, j_);
    arrived_[i] = input_to[i] == j_ ? 1 : 0;
  }
}

int OutputLocalView::buffer_at(int i, int j) const {
  if (j != j_) throw LocalityViolation("output " + std::to_string(j_) + " read buffer column " + std::to_string(j));
  return b_.at(i);
}

bool OutputLocalView::arrived_at(int i, int j) const {
  if (j != j_) throw LocalityViolation("output " + std::to_string(j_) + " observed column " + std::to_string(j));
  return arrived_.at(i) != 0;
}

SignalLoss parse_signal_loss(std::string_view s) {
  if (s == "yield") return SignalLoss::kYield;
  if (s == "hold") return SignalLoss::kHold;
  throw std::invalid_argument("unknown signal_loss: " + std::string(s));
}

std::string_view to_string(SignalLoss s) { return s == SignalLoss::kYield ? "yield" : "hold"; }

std::string_view to_string(IsaCase c) {
  switch (c) {
    case IsaCase::kHeld: return "held";
    case IsaCase::kKept: return "kept";
    case IsaCase::kDropped: return "dropped";
    case IsaCase::kBlockedBusy: return "blocked-busy";
    case IsaCase::kActivated: return "activated";
    case IsaCase::kStayedOff: return "stayed-off";
    case IsaCase::kBlockedBuffer: return "blocked-buffer";
  }
  return "?";
}

std::string_view to_string(OsaCase c) {
  switch (c) {
    case OsaCase::kHeld: return "held";
    case OsaCase::kKept: return "kept";
    case OsaCase::kDropped: return "dropped";
    case OsaCase::kBlockedBusy: return "blocked-busy";
    case OsaCase::kActivated: return "activated";
    case OsaCase::kStayedOff: return "stayed-off";
  }
  return "?";
}

IsaResult isa_step(const InputLocalView& view, int j, int j_next, double coin, double p, int& rr,
                   SignalLoss loss) {
  const int n = view.n();
  const int i = view.input();
  IsaResult r;
  r.partner = view.partner();
  if (view.partner() == j) {
    r.update = coin < p ? IsaCase::kKept : IsaCase::kDropped;
    if (r.update == IsaCase::kDropped) r.partner = kNone;
  } else if (!view.free()) {
    r.update = IsaCase::kBlockedBusy;
  } else if (view.buffer_at(i, j) == 0) {
    // An empty CB_ij means output j was free last slot.
    r.update = coin < p ? IsaCase::kActivated : IsaCase::kStayedOff;
    if (r.update == IsaCase::kActivated) r.partner = j;
  } else {
    r.update = IsaCase::kBlockedBuffer;
  }

  auto can_send = [&](int c) { return view.queue_at(i, c) > 0 && view.buffer_at(i, c) == 0; };

  if (r.partner != kNone) {
    if (can_send(r.partner)) r.send_to = r.partner;
    r.starved = r.partner == j && r.send_to != j;
    if (!r.starved || loss == SignalLoss::kHold) return r;
    // No cell reaches CB_ij, so output j settles on X_ij = 0; follow it.
    r.partner = kNone;
  }
  // Free input: probe the H(n+1) designee so that output learns whether it
  // is busy, but never CB_ij, which would read as an activation.
  if (j_next != j && can_send(j_next)) {
    r.send_to = j_next;
    return r;
  }
  const int pick = round_robin_pick(n, rr, [&](int c) { return c != j && can_send(c); });
  if (pick != kNone) {
    r.send_to = pick;
    rr = (pick + 1) % n;
  }
  return r;
}

OsaResult osa_step(const OutputLocalView& view, int i, int i_next, int& rr) {
  const int n = view.n();
  const int j = view.output();
  OsaResult r;
  r.partner = view.partner();
  if (view.partner() == i) {
    r.update = view.arrived_at(i, j) ? OsaCase::kKept : OsaCase::kDropped;
    if (r.update == OsaCase::kDropped) r.partner = kNone;
  } else if (!view.free()) {
    r.update = OsaCase::kBlockedBusy;
  } else {
    r.update = view.arrived_at(i, j) ? OsaCase::kActivated : OsaCase::kStayedOff;
    if (r.update == OsaCase::kActivated) r.partner = i;
  }

  if (r.partner != kNone) {
    if (view.buffer_at(r.partner, j) > 0) r.serve_from = r.partner;
    return r;
  }
  // Free output: empty the H(n+1) designee's buffer so that input can read
  // an empty CB as "output free" next slot.
  if (view.buffer_at(i_next, j) > 0) {
    r.serve_from = i_next;
    return r;
  }
  const int pick = round_robin_pick(n, rr, [&](int c) { return view.buffer_at(c, j) > 0; });
  if (pick != kNone) {
    r.serve_from = pick;
    rr = (pick + 1) % n;
  }
  return r;
}

DistributedDisquo::DistributedDisquo(int n, const WeightConfig& weights, PermutationStream stream,
                                     UniformSource& coins, SignalLoss loss)
    : n_(n),
      weights_(weights, n),
      stream_(std::move(stream)),
      coins_(coins),
      loss_(loss),
      in_partner_(n, kNone),
      out_partner_(n, kNone),
      rr_in_(n, 0),
      rr_out_(n, 0),
      agreed_(n) {
  if (stream_.n() != n) throw std::invalid_argument("DistributedDisquo: stream size differs");
}

void DistributedDisquo::set_schedule(const DisquoSchedule& x) {
  if (x.size() != n_) throw std::invalid_argument("DistributedDisquo: schedule size differs");
  for (int i = 0; i < n_; ++i) in_partner_[i] = x.output_of(i);
  for (int j = 0; j < n_; ++j) out_partner_[j] = x.input_of(j);
  agreed_ = x;
}

std::vector<int> DistributedDisquo::input_phase(const SwitchState& state) {
  if (state.n_ports() != n_) throw std::invalid_argument("DistributedDisquo: switch size differs");
  if (state.buffer_cap() != 1)
    throw std::invalid_argument("distributed DISQUO signals through one-cell buffers; K must be 1");
  weights_.begin_slot(state);
  const Permutation& h = stream_.advance();
  const Permutation& h_next = stream_.peek_next();

  trace_.slot = state.clock();
  trace_.h = h;
  trace_.h_next = h_next;
  trace_.inputs.assign(n_, IsaResult{});
  trace_.outputs.assign(n_, OsaResult{});

  std::vector<int> input_to(n_, kNone);
  for (int i = 0; i < n_; ++i) {
    if (static_cast<int>(in_views_.size()) <= i) in_views_.emplace_back(state, i, in_partner_[i]);
    InputLocalView& view = in_views_[i];
    view.refresh(state, in_partner_[i]);
    const int j = h.output_of(i);
    const double coin = coins_.uniform();
    const double p = weights_.probability(view.queue(j));
    const IsaResult r = isa_step(view, j, h_next.output_of(i), coin, p, rr_in_[i], loss_);
    in_partner_[i] = r.partner;
    input_to[i] = r.send_to;
    trace_.inputs[i] = r;
  }
  return input_to;
}

std::vector<int> DistributedDisquo::output_phase(const SwitchState& state, std::span<const int> input_to) {
  const Permutation& h = stream_.current();
  const Permutation& h_next = stream_.peek_next();
  std::vector<int> output_from(n_, kNone);
  for (int j = 0; j < n_; ++j) {
    if (static_cast<int>(out_views_.size()) <= j) out_views_.emplace_back(state, j, out_partner_[j], input_to);
    OutputLocalView& view = out_views_[j];
    view.refresh(state, out_partner_[j], input_to);
    const OsaResult r = osa_step(view, h.input_of(j), h_next.input_of(j), rr_out_[j]);
    out_partner_[j] = r.partner;
    output_from[j] = r.serve_from;
    trace_.outputs[j] = r;
  }
  for (int i = 0; i < n_; ++i) {
    const int j = agreed_.output_of(i);
    if (j != kNone) agreed_.deactivate(i, j);
  }
  for (int i = 0; i < n_; ++i) {
    const int j = in_partner_[i];
    if (j != kNone && out_partner_[j] == i) agreed_.activate(i, j);
  }
  return output_from;
}

}  // namespace disquo
