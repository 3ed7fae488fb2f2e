#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "disquo/random.hpp"
#include "disquo/schedule.hpp"

namespace disquo {

/// Plain-changes walk over all N! permutations (Knuth's Algorithm P):
/// successive permutations differ by one adjacent transposition. After the
/// last permutation (2 1 3 ... N) the walk wraps to the identity, which is
/// itself one adjacent swap away, so the cycle is closed.
class HamiltonianWalk {
 public:
  explicit HamiltonianWalk(int n);

  int n() const { return n_; }
  // The permutation the next call to hamiltonian_next() returns.
  const Permutation& current() const { return current_; }
  std::uint64_t step() const { return step_; }  // calls so far

  Permutation next();

 private:
  void reset();
  void advance();

  int n_;
  std::vector<int> a_;  // one-based values, zero-based positions
  std::vector<int> c_;
  std::vector<int> o_;
  Permutation current_;
  std::uint64_t step_ = 0;
};

Permutation hamiltonian_next(HamiltonianWalk& walk);

enum class HMode { kHamiltonian, kSharedRandom };

HMode parse_h_mode(std::string_view s);
std::string_view to_string(HMode m);

/// Shared source of H(n). Every port holds an identical copy, so
/// advance() gives H(n) and peek_next() gives H(n+1) without communication.
class PermutationStream {
 public:
  PermutationStream(int n, HMode mode, std::uint64_t seed = 0);
  // Replays the given permutations cyclically.
  explicit PermutationStream(std::vector<Permutation> script);

  int n() const { return n_; }

  // Moves to the next slot and returns its permutation H(n).
  const Permutation& advance();
  // H(n) of the current slot; identity-sized placeholder before the first advance().
  const Permutation& current() const { return current_; }
  // H(n+1), available to free ports at the end of slot n.
  const Permutation& peek_next() const { return next_; }

 private:
  Permutation generate();

  enum class Source { kWalk, kRandom, kScript };
  int n_;
  Source source_;
  HamiltonianWalk walk_;
  Rng rng_;
  std::vector<Permutation> script_;
  std::size_t script_pos_ = 0;
  Permutation current_;
  Permutation next_;
};

}  // namespace disquo
