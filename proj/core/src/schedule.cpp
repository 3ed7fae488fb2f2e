#include "disquo/schedule.hpp"

#include <stdexcept>

namespace disquo {

Permutation::Permutation(std::vector<int> output_of) : out_(std::move(output_of)) {
  const int n = size();
  in_.assign(n, kNone);
  for (int i = 0; i < n; ++i) {
    const int j = out_[i];
    if (j < 0 || j >= n || in_[j] != kNone)
      throw std::invalid_argument("not a permutation of 0..n-1");
    in_[j] = i;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) out[i] = i;
  return Permutation(std::move(out));
}

std::string Permutation::to_string() const {
  std::string s;
  for (int j : out_) s += static_cast<char>('1' + j);
  return s;
}

DisquoSchedule DisquoSchedule::from_matrix(const Matrix<std::uint8_t>& x) {
  const int n = x.size();
  DisquoSchedule s(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (x(i, j) > 1) throw std::invalid_argument("schedule entries must be 0 or 1");
      if (x(i, j) == 1) {
        if (s.row_[i] != kNone) throw std::invalid_argument("schedule row sum exceeds 1");
        if (s.col_[j] != kNone) throw std::invalid_argument("schedule column sum exceeds 1");
        s.row_[i] = j;
        s.col_[j] = i;
      }
    }
  }
  return s;
}

DisquoSchedule DisquoSchedule::from_pairs(int n, const std::vector<Pair>& pairs) {
  DisquoSchedule s(n);
  for (auto [i, j] : pairs) s.activate(i, j);
  return s;
}

void DisquoSchedule::activate(int i, int j) {
  if (i < 0 || j < 0 || i >= size() || j >= size())
    throw std::out_of_range("schedule index out of range");
  if (row_[i] == j) return;
  if (row_[i] != kNone || col_[j] != kNone)
    throw std::logic_error("activation would violate the matching constraint");
  row_[i] = j;
  col_[j] = i;
}

void DisquoSchedule::deactivate(int i, int j) {
  if (row_[i] != j) return;
  row_[i] = kNone;
  col_[j] = kNone;
}

int DisquoSchedule::cardinality() const {
  int k = 0;
  for (int j : row_) k += (j != kNone);
  return k;
}

std::vector<Pair> DisquoSchedule::pairs() const {
  std::vector<Pair> out;
  for (int i = 0; i < size(); ++i)
    if (row_[i] != kNone) out.emplace_back(i, row_[i]);
  return out;
}

Matrix<std::uint8_t> DisquoSchedule::to_matrix() const {
  Matrix<std::uint8_t> x(size(), 0);
  for (int i = 0; i < size(); ++i)
    if (row_[i] != kNone) x(i, row_[i]) = 1;
  return x;
}

}  // namespace disquo
