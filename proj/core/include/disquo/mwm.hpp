#pragma once

#include <vector>

#include "disquo/matrix.hpp"
#include "disquo/schedule.hpp"

namespace disquo {

struct MatchingResult {
  std::vector<Pair> matching;  // ascending, zero-weight pairs dropped
  double weight = 0.0;
};

enum class TieBreak {
  kLexicographic,  // smallest sorted pair list among optimal matchings
  kAny,            // whatever the Hungarian pass returns (O(N^3))
};

/// Maximum weight matching on a bipartite graph with non-negative weights.
/// Hungarian algorithm with potentials; only positive-weight pairs are kept.
MatchingResult mwm(const Matrix<double>& w, TieBreak tie = TieBreak::kLexicographic);
// Rejects non-square or negative input.
MatchingResult mwm(const std::vector<std::vector<double>>& w, TieBreak tie = TieBreak::kLexicographic);

}  // namespace disquo
