#include "disquo/permutation_stream.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace disquo {

HamiltonianWalk::HamiltonianWalk(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("HamiltonianWalk: n must be >= 1");
  reset();
}

void HamiltonianWalk::reset() {
  a_.resize(n_);
  std::iota(a_.begin(), a_.end(), 1);
  c_.assign(n_ + 1, 0);
  o_.assign(n_ + 1, 1);
  current_ = Permutation::identity(n_);
}

void HamiltonianWalk::advance() {
  // Steps P3-P7 of Algorithm P; indices j and positions are one-based there.
  int j = n_;
  int s = 0;
  while (j > 1) {
    const int q = c_[j] + o_[j];
    if (q < 0) {
      o_[j] = -o_[j];
      --j;
      continue;
    }
    if (q == j) {
      ++s;
      o_[j] = -o_[j];
      --j;
      continue;
    }
    std::swap(a_[j - c_[j] + s - 1], a_[j - q + s - 1]);
    c_[j] = q;
    std::vector<int> out(n_);
    for (int i = 0; i < n_; ++i) out[i] = a_[i] - 1;
    current_ = Permutation(std::move(out));
    return;
  }
  // Exhausted: the walk sits at 2 1 3 ... N; one swap closes the cycle.
  reset();
}

Permutation HamiltonianWalk::next() {
  Permutation h = current_;
  ++step_;
  if (n_ > 1) advance();
  return h;
}

Permutation hamiltonian_next(HamiltonianWalk& walk) { return walk.next(); }

HMode parse_h_mode(std::string_view s) {
  if (s == "hamiltonian") return HMode::kHamiltonian;
  if (s == "shared-random") return HMode::kSharedRandom;
  throw std::invalid_argument("unknown h_mode: " + std::string(s));
}

std::string_view to_string(HMode m) {
  return m == HMode::kHamiltonian ? "hamiltonian" : "shared-random";
}

PermutationStream::PermutationStream(int n, HMode mode, std::uint64_t seed)
    : n_(n),
      source_(mode == HMode::kHamiltonian ? Source::kWalk : Source::kRandom),
      walk_(n),
      rng_(seed) {
  current_ = Permutation::identity(n);
  next_ = generate();
}

PermutationStream::PermutationStream(std::vector<Permutation> script)
    : n_(script.empty() ? 0 : script.front().size()),
      source_(Source::kScript),
      walk_(script.empty() ? 1 : script.front().size()),
      script_(std::move(script)) {
  if (script_.empty()) throw std::invalid_argument("PermutationStream: empty script");
  for (const auto& h : script_)
    if (h.size() != n_) throw std::invalid_argument("PermutationStream: mixed sizes in script");
  current_ = Permutation::identity(n_);
  next_ = generate();
}

Permutation PermutationStream::generate() {
  switch (source_) {
    case Source::kWalk:
      return walk_.next();
    case Source::kRandom: {
      std::vector<int> out(n_);
      std::iota(out.begin(), out.end(), 0);
      for (int i = n_ - 1; i > 0; --i) std::swap(out[i], out[rng_.below(i + 1)]);
      return Permutation(std::move(out));
    }
    case Source::kScript: {
      Permutation h = script_[script_pos_];
      script_pos_ = (script_pos_ + 1) % script_.size();
      return h;
    }
  }
  return Permutation::identity(n_);
}

const Permutation& PermutationStream::advance() {
  current_ = std::move(next_);
  next_ = generate();
  return current_;
}

}  // namespace disquo
