#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "disquo/matrix.hpp"

namespace disquo {

inline constexpr int kNone = -1;

using Pair = std::pair<int, int>;  // (input, output), zero-based

/// Input/output permutation H: output_of(i) is the output paired with input i.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> output_of);  // validates
  static Permutation identity(int n);

  int size() const { return static_cast<int>(out_.size()); }
  int output_of(int input) const { return out_[input]; }
  int input_of(int output) const { return in_[output]; }
  bool contains(int i, int j) const { return out_[i] == j; }
  const std::vector<int>& outputs() const { return out_; }

  // One-based digit string, e.g. "132" for N=3 (N <= 9 only).
  std::string to_string() const;

  bool operator==(const Permutation& o) const { return out_ == o.out_; }

 private:
  std::vector<int> out_;
  std::vector<int> in_;
};

/// DISQUO schedule X: a partial matching of inputs to outputs. Stored as the
/// two one-sided maps so row and column sums are <= 1 by construction.
class DisquoSchedule {
 public:
  DisquoSchedule() = default;
  explicit DisquoSchedule(int n) : row_(n, kNone), col_(n, kNone) {}

  // Rejects row or column sums > 1 and entries outside {0, 1}.
  static DisquoSchedule from_matrix(const Matrix<std::uint8_t>& x);
  static DisquoSchedule from_pairs(int n, const std::vector<Pair>& pairs);

  int size() const { return static_cast<int>(row_.size()); }
  bool contains(int i, int j) const { return row_[i] == j; }
  int output_of(int input) const { return row_[input]; }
  int input_of(int output) const { return col_[output]; }
  bool input_free(int i) const { return row_[i] == kNone; }
  bool output_free(int j) const { return col_[j] == kNone; }

  // True iff some neighbor (same row or same column, other pair) is active.
  bool has_active_neighbor(int i, int j) const {
    return (row_[i] != kNone && row_[i] != j) || (col_[j] != kNone && col_[j] != i);
  }

  void activate(int i, int j);  // throws if (i, j) would collide
  void deactivate(int i, int j);

  int cardinality() const;
  std::vector<Pair> pairs() const;  // ascending by input
  Matrix<std::uint8_t> to_matrix() const;

  bool operator==(const DisquoSchedule&) const = default;

 private:
  std::vector<int> row_;
  std::vector<int> col_;
};

/// Input schedule S^I and output schedule S^O for one slot.
struct PortSchedules {
  PortSchedules() = default;
  explicit PortSchedules(int n) : input_to(n, kNone), output_from(n, kNone) {}

  std::vector<int> input_to;     // S^I: output buffer written by input i, or kNone
  std::vector<int> output_from;  // S^O: input whose buffer output j serves, or kNone

  bool input_sends(int i, int j) const { return input_to[i] == j; }
  bool output_serves(int i, int j) const { return output_from[j] == i; }

  bool operator==(const PortSchedules&) const = default;
};

}  // namespace disquo
