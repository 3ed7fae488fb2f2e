#include "disquo/basic_update.hpp"

#include <stdexcept>

namespace disquo {

UpdateCase classify_update(const DisquoSchedule& x_prev, int i, int j, bool coin_success) {
  if (x_prev.contains(i, j)) return coin_success ? UpdateCase::kKept : UpdateCase::kDropped;
  if (x_prev.has_active_neighbor(i, j)) return UpdateCase::kBlocked;
  return coin_success ? UpdateCase::kActivated : UpdateCase::kStayedOff;
}

DisquoSchedule basic_update(const DisquoSchedule& x_prev, const Permutation& h,
                            const std::function<double(int, int)>& p, UniformSource& coins) {
  const int n = x_prev.size();
  if (h.size() != n) throw std::invalid_argument("basic_update: H and X sizes differ");
  DisquoSchedule x = x_prev;
  for (int i = 0; i < n; ++i) {
    const int j = h.output_of(i);
    const bool success = coins.uniform() < p(i, j);
    switch (classify_update(x_prev, i, j, success)) {
      case UpdateCase::kDropped:
        x.deactivate(i, j);
        break;
      case UpdateCase::kActivated:
        x.activate(i, j);
        break;
      default:
        break;
    }
  }
  return x;
}

DisquoSchedule basic_update(const DisquoSchedule& x_prev, const Permutation& h,
                            const Matrix<double>& w, UniformSource& coins) {
  if (w.size() != x_prev.size()) throw std::invalid_argument("basic_update: weight matrix size");
  return basic_update(x_prev, h, [&](int i, int j) { return activation_probability(w(i, j)); }, coins);
}

CentralDisquo::CentralDisquo(int n, const WeightConfig& weights, PermutationStream stream,
                             UniformSource& coins, FreePortPolicy policy)
    : n_(n),
      weights_(weights, n),
      stream_(std::move(stream)),
      coins_(coins),
      policy_(policy),
      rr_(n),
      x_(n) {
  if (stream_.n() != n) throw std::invalid_argument("CentralDisquo: stream size differs");
}

std::vector<int> CentralDisquo::input_phase(const SwitchState& state) {
  weights_.begin_slot(state);
  const Permutation& h = stream_.advance();
  x_ = basic_update(x_, h, [&](int i, int j) { return weights_.probability(state.queue(i, j)); }, coins_);
  PortSchedules ps = derive_port_schedules(x_, state, policy_, &stream_.peek_next(), rr_);
  output_from_ = std::move(ps.output_from);
  return std::move(ps.input_to);
}

std::vector<int> CentralDisquo::output_phase(const SwitchState&, std::span<const int>) {
  return output_from_;
}

}  // namespace disquo
