#pragma once

#include <functional>
#include <string_view>

#include "disquo/matrix.hpp"
#include "disquo/permutation_stream.hpp"
#include "disquo/random.hpp"
#include "disquo/schedule.hpp"
#include "disquo/slot_engine.hpp"
#include "disquo/weights.hpp"

namespace disquo {

enum class UpdateCase { kHeld, kKept, kDropped, kActivated, kStayedOff, kBlocked };

/// Which rule decided X_ij for (i, j) in H, given X(n-1) and the coin outcome.
UpdateCase classify_update(const DisquoSchedule& x_prev, int i, int j, bool coin_success);

/// One step of the centralized DISQUO chain. Draws exactly one coin per
/// (i, H(i)), in ascending input order, whether or not the coin matters;
/// the pair turns or stays on iff coin < p_ij.
DisquoSchedule basic_update(const DisquoSchedule& x_prev, const Permutation& h,
                            const std::function<double(int, int)>& p, UniformSource& coins);

// Frozen-weight form: p_ij = activation_probability(w(i, j)).
DisquoSchedule basic_update(const DisquoSchedule& x_prev, const Permutation& h,
                            const Matrix<double>& w, UniformSource& coins);

/// Centralized DISQUO: basic_update with W = f(Q~), followed by port
/// schedule derivation with free-port augmentation.
class CentralDisquo final : public Scheduler {
 public:
  CentralDisquo(int n, const WeightConfig& weights, PermutationStream stream, UniformSource& coins,
                FreePortPolicy policy = FreePortPolicy::kRoundRobin);

  std::string_view name() const override { return "disquo-central"; }
  std::vector<int> input_phase(const SwitchState& state) override;
  std::vector<int> output_phase(const SwitchState& state, std::span<const int> input_to) override;
  const DisquoSchedule* disquo_schedule() const override { return &x_; }

  void set_schedule(const DisquoSchedule& x) { x_ = x; }
  const PermutationStream& stream() const { return stream_; }
  const WeightModel& weights() const { return weights_; }

 private:
  int n_;
  WeightModel weights_;
  PermutationStream stream_;
  UniformSource& coins_;
  FreePortPolicy policy_;
  RoundRobinPointers rr_;
  DisquoSchedule x_;
  std::vector<int> output_from_;
};

}  // namespace disquo
