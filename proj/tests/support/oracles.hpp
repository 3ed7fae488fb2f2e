#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary. Nothing here calls the code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "disquo/basic_update.hpp"
#include "disquo/qmax_estimator.hpp"
#include "disquo/distributed.hpp"
#include "disquo/random.hpp"
#include "disquo/schedule.hpp"
#include "disquo/switch_state.hpp"
#include "disquo/traffic.hpp"
#include "disquo/view_monitor.hpp"

namespace oracle {

// Every partial matching of an n x n bipartite graph as output_of vectors
// (-1 = unmatched), by plain recursion.
inline void partial_matchings(int n, int i, std::vector<int>& row, std::vector<bool>& used,
                              std::vector<std::vector<int>>& out) {
  if (i == n) {
    out.push_back(row);
    return;
  }
  row[i] = -1;
  partial_matchings(n, i + 1, row, used, out);
  for (int j = 0; j < n; ++j) {
    if (used[j]) continue;
    used[j] = true;
    row[i] = j;
    partial_matchings(n, i + 1, row, used, out);
    used[j] = false;
  }
  row[i] = -1;
}

inline std::vector<std::vector<int>> all_partial_matchings(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> row(n, -1);
  std::vector<bool> used(n, false);
  partial_matchings(n, 0, row, used, out);
  return out;
}

// sum_k C(n,k)^2 k!
inline long matching_count(int n) {
  auto choose = [](int a, int b) {
    double r = 1;
    for (int t = 1; t <= b; ++t) r = r * (a - b + t) / t;
    return std::lround(r);
  };
  long total = 0;
  for (int k = 0; k <= n; ++k) {
    long fact = 1;
    for (int t = 2; t <= k; ++t) fact *= t;
    total += choose(n, k) * choose(n, k) * fact;
  }
  return total;
}

inline double brute_force_mwm(const std::vector<std::vector<double>>& w) {
  const int n = static_cast<int>(w.size());
  double best = 0.0;
  for (const auto& m : all_partial_matchings(n)) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      if (m[i] >= 0) s += w[i][m[i]];
    best = std::max(best, s);
  }
  return best;
}

// All permutations of 0..n-1 in lexicographic order.
inline std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Geo^X/D/1: batches Binomial(N, sigma/N) per slot into one output, one
// departure per slot, arrivals after service. Mean sojourn measured as
// departure slot - arrival slot.
inline double oq_uniform_bernoulli_delay(int n, double sigma) {
  const double p = sigma / n;
  const double second_factorial_moment = n * (n - 1.0) * p * p;  // E[A(A-1)]
  return 1.0 + second_factorial_moment / (2.0 * sigma * (1.0 - sigma));
}

// Logistic by the textbook formula; fine for the moderate weights used in tests.
inline double logistic(double w) { return std::exp(w) / (1.0 + std::exp(w)); }

// f(x) = log(1 + x) / log(e + log(1 + x)).
inline double f_loglog(double x) { return std::log1p(x) / std::log(std::exp(1.0) + std::log1p(x)); }

/// Wraps an Rng and remembers every draw of the current slot.
class RecordingUniforms final : public disquo::UniformSource {
 public:
  explicit RecordingUniforms(std::uint64_t seed) : rng_(seed) {}
  double uniform() override {
    const double u = rng_.uniform();
    log_.push_back(u);
    return u;
  }
  std::vector<double> take() { return std::exchange(log_, {}); }

 private:
  disquo::Rng rng_;
  std::vector<double> log_;
};

struct EquivalenceOutcome {
  std::int64_t slots = 0;
  std::int64_t mismatched_slots = 0;   // distributed X differs from the basic_update replay
  std::int64_t coin_count_errors = 0;  // slots where the replay did not consume exactly N coins
  std::int64_t divergences = 0;        // new view divergences, any class
  std::int64_t unclassified = 0;
};

/// Runs distributed DISQUO (K = 1) and, slot by slot, feeds the same H(n),
/// the same coin values and p computed from the same queue snapshot into
/// basic_update starting from the same X(0). Saturated traffic with one
/// cell preloaded per VOQ keeps every input able to probe.
inline EquivalenceOutcome distributed_vs_basic_update(int n, disquo::HMode mode, std::uint64_t seed,
                                                      std::int64_t slots, bool saturated = true,
                                                      double sigma = 0.9) {
  using namespace disquo;
  RecordingUniforms coins(derive_seed(seed, 2));
  DistributedDisquo dis(n, WeightConfig{}, PermutationStream(n, mode, derive_seed(seed, 3)), coins);
  SwitchState state(n, 1);
  std::unique_ptr<TrafficSource> traffic;
  if (saturated) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) state.enqueue(i, j, 0);
    traffic = std::make_unique<SaturatedSource>(n);
  } else {
    traffic = std::make_unique<BernoulliSource>(make_rates(TrafficPattern::kUniform, n, sigma));
  }
  Rng traffic_rng(derive_seed(seed, 1));
  ViewMonitor monitor(n, /*fatal=*/false);

  EquivalenceOutcome out;
  DisquoSchedule reference(n);
  Matrix<std::int64_t> q_before(n);
  for (std::int64_t t = 0; t < slots; ++t) {
    q_before = state.queues();
    step_slot(state, dis, *traffic, traffic_rng);
    monitor.observe(dis, state);

    ScriptedUniforms replay(coins.take());
    const auto& h = dis.last_trace().h;
    reference = basic_update(reference, h,
                             [&](int i, int j) { return logistic(f_loglog(static_cast<double>(q_before(i, j)))); },
                             replay);
    if (replay.consumed() != static_cast<std::size_t>(n)) ++out.coin_count_errors;

    bool same = true;
    for (int i = 0; i < n; ++i) {
      if (dis.input_rows()[i] != reference.output_of(i)) same = false;
      if (dis.output_cols()[i] != reference.input_of(i)) same = false;
    }
    if (!same) {
      ++out.mismatched_slots;
      // Re-anchor on the input side so one divergence is not counted forever.
      reference = DisquoSchedule(n);
      for (int i = 0; i < n; ++i) {
        const int j = dis.input_rows()[i];
        if (j != kNone && reference.output_free(j)) reference.activate(i, j);
      }
    }
    ++out.slots;
  }
  out.divergences = monitor.total_new();
  out.unclassified = monitor.unclassified();
  return out;
}

/// Drives a QmaxEstimator with N linecard maxima that each move by at most
/// one cell per slot and returns the largest |estimate - true max| seen
/// once every linecard has reported. Epochs cycle through independent
/// random walks, all cards climbing (reports lag low), random walks again,
/// and all cards falling (reports lag high).
inline std::int64_t qmax_drift_worst_error(int n, std::int64_t slots, std::uint64_t seed) {
  disquo::Rng rng(seed);
  disquo::QmaxEstimator est(n);
  std::vector<std::int64_t> local(n);
  for (auto& v : local) v = 1'000'000 + static_cast<std::int64_t>(rng.below(4 * n));
  std::int64_t worst = 0;
  const std::int64_t epoch = 10'000;
  for (std::int64_t t = 0; t < slots; ++t) {
    est.report(t, local[t % n]);
    if (t >= n - 1) {
      const std::int64_t truth = *std::max_element(local.begin(), local.end());
      worst = std::max(worst, std::abs(est.estimate() - truth));
    }
    const int phase = static_cast<int>((t / epoch) % 4);
    for (auto& v : local) {
      const int step = phase == 1 ? 1 : phase == 3 ? -1 : static_cast<int>(rng.below(3)) - 1;
      v = std::max<std::int64_t>(0, v + step);
    }
  }
  return worst;
}

}  // namespace oracle
