#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "disquo/matrix.hpp"
#include "disquo/schedule.hpp"

namespace disquo {

/// FIFO of cell arrival stamps, run-length encoded so large preloaded
/// backlogs cost O(1) memory.
class CellFifo {
 public:
  void push(std::int64_t arrival_slot, std::int64_t count = 1);
  std::int64_t pop();  // returns the arrival slot of the head cell
  std::int64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

 private:
  struct Run {
    std::int64_t slot;
    std::int64_t count;
  };
  std::deque<Run> runs_;
  std::int64_t size_ = 0;
};

/// Physical state of an N x N crosspoint-buffered switch: VOQ occupancies
/// Q_ij, crosspoint buffer occupancies B_ij in [0, K], and the slot clock.
class SwitchState {
 public:
  SwitchState(int n_ports, int buffer_cap);

  int n_ports() const { return n_; }
  int buffer_cap() const { return k_; }
  std::int64_t clock() const { return clock_; }

  std::int64_t queue(int i, int j) const { return q_(i, j); }
  int xbuf(int i, int j) const { return b_(i, j); }
  const Matrix<std::int64_t>& queues() const { return q_; }
  const Matrix<int>& xbufs() const { return b_; }

  std::int64_t total_queued() const { return total_q_; }
  std::int64_t total_buffered() const { return total_b_; }
  std::int64_t max_queue() const;
  std::int64_t row_max_queue(int i) const;

  // Appends `count` cells stamped `arrival_slot` to VOQ_ij.
  void enqueue(int i, int j, std::int64_t arrival_slot, std::int64_t count = 1);
  // Places `count` cells directly in CB_ij; throws if that exceeds K.
  void fill_buffer(int i, int j, std::int64_t arrival_slot, int count = 1);

  // Moves the head of VOQ_ij into CB_ij. Requires Q_ij > 0 and B_ij < K.
  void transfer(int i, int j);
  // Removes the head of CB_ij and returns its arrival slot. Requires B_ij > 0.
  std::int64_t depart(int i, int j);

  void advance_clock() { ++clock_; }

 private:
  int n_;
  int k_;
  std::int64_t clock_ = 0;
  Matrix<std::int64_t> q_;
  Matrix<int> b_;
  std::vector<CellFifo> voq_;
  std::vector<CellFifo> cb_;
  std::int64_t total_q_ = 0;
  std::int64_t total_b_ = 0;
};

SwitchState new_switch(int n_ports, int buffer_cap);

struct Arrival {
  int input;
  int output;
  std::int64_t slot;
  bool operator==(const Arrival&) const = default;
};

struct Departure {
  int input;
  int output;
  std::int64_t delay;  // departure slot - arrival slot
  bool operator==(const Departure&) const = default;
};

/// Everything that happened in one slot.
struct SlotReport {
  std::int64_t slot = 0;
  std::vector<Arrival> arrivals;
  std::vector<Pair> input_transfers;
  std::vector<Departure> output_departures;
  DisquoSchedule schedule;  // empty (size 0) for schedulers without one
  PortSchedules port_schedules;

  void clear();
  bool operator==(const SlotReport&) const = default;
};

}  // namespace disquo
