#include "disquo/switch_state.hpp"

#include <algorithm>
#include <stdexcept>

namespace disquo {

void CellFifo::push(std::int64_t arrival_slot, std::int64_t count) {
  if (count <= 0) return;
  if (!runs_.empty() && runs_.back().slot == arrival_slot) {
    runs_.back().count += count;
  } else {
    runs_.push_back({arrival_slot, count});
  }
  size_ += count;
}

std::int64_t CellFifo::pop() {
  if (runs_.empty()) throw std::logic_error("pop from empty cell FIFO");
  Run& head = runs_.front();
  const std::int64_t slot = head.slot;
  if (--head.count == 0) runs_.pop_front();
  --size_;
  return slot;
}

SwitchState::SwitchState(int n_ports, int buffer_cap)
    : n_(n_ports), k_(buffer_cap) {
  if (n_ports < 1) throw std::invalid_argument("n_ports must be >= 1");
  if (buffer_cap < 1) throw std::invalid_argument("buffer_cap must be >= 1");
  q_ = Matrix<std::int64_t>(n_, 0);
  b_ = Matrix<int>(n_, 0);
  voq_.resize(static_cast<std::size_t>(n_) * n_);
  cb_.resize(static_cast<std::size_t>(n_) * n_);
}

SwitchState new_switch(int n_ports, int buffer_cap) { return SwitchState(n_ports, buffer_cap); }

std::int64_t SwitchState::max_queue() const {
  const auto flat = q_.flat();
  return *std::max_element(flat.begin(), flat.end());
}

std::int64_t SwitchState::row_max_queue(int i) const {
  const auto r = q_.row(i);
  return *std::max_element(r.begin(), r.end());
}

void SwitchState::enqueue(int i, int j, std::int64_t arrival_slot, std::int64_t count) {
  if (count < 0) throw std::invalid_argument("negative cell count");
  voq_[static_cast<std::size_t>(i) * n_ + j].push(arrival_slot, count);
  q_(i, j) += count;
  total_q_ += count;
}

void SwitchState::fill_buffer(int i, int j, std::int64_t arrival_slot, int count) {
  if (count < 0 || b_(i, j) + count > k_)
    throw std::invalid_argument("crosspoint buffer fill exceeds capacity");
  cb_[static_cast<std::size_t>(i) * n_ + j].push(arrival_slot, count);
  b_(i, j) += count;
  total_b_ += count;
}

void SwitchState::transfer(int i, int j) {
  if (q_(i, j) <= 0 || b_(i, j) >= k_)
    throw std::logic_error("infeasible input transfer");
  const std::int64_t stamp = voq_[static_cast<std::size_t>(i) * n_ + j].pop();
  cb_[static_cast<std::size_t>(i) * n_ + j].push(stamp);
  --q_(i, j);
  ++b_(i, j);
  --total_q_;
  ++total_b_;
}

std::int64_t SwitchState::depart(int i, int j) {
  if (b_(i, j) <= 0) throw std::logic_error("departure from empty crosspoint buffer");
  const std::int64_t stamp = cb_[static_cast<std::size_t>(i) * n_ + j].pop();
  --b_(i, j);
  --total_b_;
  return stamp;
}

void SlotReport::clear() {
  arrivals.clear();
  input_transfers.clear();
  output_departures.clear();
  schedule = DisquoSchedule();
  port_schedules = PortSchedules();
}

}  // namespace disquo
