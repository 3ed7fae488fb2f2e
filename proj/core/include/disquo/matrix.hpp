#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace disquo {

// Dense square matrix indexed by (input, output), row-major.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int n, T fill = T{}) : n_(n), data_(checked_size(n), fill) {}

  int size() const { return n_; }

  T& operator()(int i, int j) {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  const T& operator()(int i, int j) const {
    assert(i >= 0 && i < n_ && j >= 0 && j < n_);
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }

  std::span<T> row(int i) {
    return {data_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }
  std::span<const T> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
  }

  std::span<T> flat() { return data_; }
  std::span<const T> flat() const { return data_; }

  void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

  bool operator==(const Matrix&) const = default;

 private:
  static std::size_t checked_size(int n) {
    if (n < 0) throw std::invalid_argument("matrix dimension must be non-negative");
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  }

  int n_ = 0;
  std::vector<T> data_;
};

}  // namespace disquo
