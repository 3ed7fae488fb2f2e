#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "disquo/permutation_stream.hpp"
#include "disquo/random.hpp"
#include "disquo/schedule.hpp"
#include "disquo/slot_engine.hpp"
#include "disquo/switch_state.hpp"
#include "disquo/weights.hpp"

namespace disquo {

/// A port tried to read state it cannot observe.
class LocalityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// What input i can see: its own row of X, its VOQs and its crosspoint buffers.
class InputLocalView {
 public:
  InputLocalView(const SwitchState& state, int input, int partner);
  // Reloads the same port's observations, reusing storage.
  void refresh(const SwitchState& state, int partner);

  int input() const { return i_; }
  int n() const { return static_cast<int>(q_.size()); }
  int partner() const { return partner_; }  // output paired in X, or kNone
  bool free() const { return partner_ == kNone; }

  std::int64_t queue(int j) const { return q_[j]; }
  int buffer(int j) const { return b_[j]; }

  // Checked forms used by the access-violation harness.
  std::int64_t queue_at(int i, int j) const;
  int buffer_at(int i, int j) const;

 private:
  int i_;
  int partner_;
  std::vector<std::int64_t> q_;
  std::vector<int> b_;
};

/// What output j can see: its own column of X, its crosspoint buffers after
/// Phase II, and which of them received a cell during Phase II.
class OutputLocalView {
 public:
  OutputLocalView(const SwitchState& post_transfer, int output, int partner,
                  std::span<const int> input_to);
  void refresh(const SwitchState& post_transfer, int partner, std::span<const int> input_to);

  int output() const { return j_; }
  int n() const { return static_cast<int>(b_.size()); }
  int partner() const { return partner_; }
  bool free() const { return partner_ == kNone; }

  int buffer(int i) const { return b_[i]; }
  bool arrived(int i) const { return arrived_[i] != 0; }

  int buffer_at(int i, int j) const;
  bool arrived_at(int i, int j) const;

 private:
  int j_;
  int partner_;
  std::vector<int> b_;
  std::vector<std::uint8_t> arrived_;
};

/// What an input does when it holds (i, j) in H(n) on after the coin but
/// cannot put a cell into CB_ij (empty VOQ), so output j will read X_ij = 0.
enum class SignalLoss {
  kYield,  // the input adopts the output's reading and frees itself
  kHold,   // the input keeps X_ij = 1 as the ISA table reads literally
};

SignalLoss parse_signal_loss(std::string_view s);
std::string_view to_string(SignalLoss s);

enum class IsaCase { kHeld, kKept, kDropped, kBlockedBusy, kActivated, kStayedOff, kBlockedBuffer };
enum class OsaCase { kHeld, kKept, kDropped, kBlockedBusy, kActivated, kStayedOff };

std::string_view to_string(IsaCase c);
std::string_view to_string(OsaCase c);

struct IsaResult {
  int partner = kNone;  // input i's row of X(n)
  int send_to = kNone;  // S^I
  IsaCase update = IsaCase::kHeld;
  // The coin left (i, j) on but no cell went into CB_ij, so output j reads
  // X_ij = 0. Under SignalLoss::kYield the input then gives the pair up.
  bool starved = false;
};

struct OsaResult {
  int partner = kNone;
  int serve_from = kNone;  // S^O
  OsaCase update = OsaCase::kHeld;
};

/// Input Scheduling Algorithm for input i with (i, j) in H(n) and
/// (i, j_next) in H(n+1). `p` is the activation probability of (i, j).
IsaResult isa_step(const InputLocalView& view, int j, int j_next, double coin, double p, int& rr,
                   SignalLoss loss = SignalLoss::kYield);

/// Output Scheduling Algorithm for output j with (i, j) in H(n) and
/// (i_next, j) in H(n+1).
OsaResult osa_step(const OutputLocalView& view, int i, int i_next, int& rr);

/// One slot of protocol activity, kept for monitoring.
struct DistributedTrace {
  std::int64_t slot = -1;
  Permutation h;
  Permutation h_next;
  std::vector<IsaResult> inputs;
  std::vector<OsaResult> outputs;
};

/// Fully distributed DISQUO (K = 1): inputs run ISA in Phase II, outputs run
/// OSA in Phase III, and the only channel between them is the crosspoint
/// buffers. Input-side and output-side copies of X are kept separately.
class DistributedDisquo final : public Scheduler {
 public:
  DistributedDisquo(int n, const WeightConfig& weights, PermutationStream stream, UniformSource& coins,
                    SignalLoss loss = SignalLoss::kYield);

  std::string_view name() const override { return "disquo-distributed"; }
  std::vector<int> input_phase(const SwitchState& state) override;
  std::vector<int> output_phase(const SwitchState& state, std::span<const int> input_to) override;
  // Pairs on which both sides agree.
  const DisquoSchedule* disquo_schedule() const override { return &agreed_; }

  // Starts both views from the same schedule.
  void set_schedule(const DisquoSchedule& x);

  std::span<const int> input_rows() const { return in_partner_; }
  std::span<const int> output_cols() const { return out_partner_; }
  const DistributedTrace& last_trace() const { return trace_; }
  const PermutationStream& stream() const { return stream_; }

 private:
  int n_;
  WeightModel weights_;
  PermutationStream stream_;
  UniformSource& coins_;
  SignalLoss loss_;
  std::vector<int> in_partner_;
  std::vector<int> out_partner_;
  std::vector<int> rr_in_;
  std::vector<int> rr_out_;
  DisquoSchedule agreed_;
  DistributedTrace trace_;
  std::vector<InputLocalView> in_views_;
  std::vector<OutputLocalView> out_views_;
};

}  // namespace disquo
