#include <gtest/gtest.h>

#include <cmath>

#include "disquo/analysis_report.hpp"
#include "disquo/basic_update.hpp"
#include "disquo/chain.hpp"
#include "support/oracles.hpp"
#include "support/scripted.hpp"

using namespace disquo;
using testing_support::kLose;
using testing_support::kWin;

namespace {

Matrix<double> random_weights(int n, Rng& rng, double scale = 2.0) {
  Matrix<double> w(n);
  for (auto& v : w.flat()) v = scale * rng.uniform();
  return w;
}

// Transition matrix by enumerating every permutation and every coin outcome
// and running basic_update on each one.
Eigen::MatrixXd enumerated_transitions(const Matrix<double>& w, const std::vector<DisquoSchedule>& states) {
  const int n = w.size();
  const StateIndex index(states);
  const auto perms = oracle::all_permutations(n);
  const int m = static_cast<int>(states.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m, m);
  for (int s = 0; s < m; ++s)
    for (const auto& hv : perms) {
      const Permutation h(hv);
      for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<double> coins(n);
        double prob = 1.0 / static_cast<double>(perms.size());
        for (int i = 0; i < n; ++i) {
          const bool win = mask >> i & 1;
          coins[i] = win ? kWin : kLose;
          const double pij = oracle::logistic(w(i, h.output_of(i)));
          prob *= win ? pij : 1 - pij;
        }
        ScriptedUniforms src(coins);
        p(s, index(basic_update(states[s], h, w, src))) += prob;
      }
    }
  return p;
}

}  // namespace

TEST(Enumerate, StateCounts) {
  const int expected[] = {2, 7, 34, 209};
  for (int n = 1; n <= 4; ++n) {
    const auto states = enumerate_schedules(n);
    EXPECT_EQ(static_cast<long>(states.size()), oracle::matching_count(n));
    EXPECT_EQ(static_cast<int>(states.size()), expected[n - 1]);
    EXPECT_EQ(states[0].cardinality(), 0);
    for (std::size_t k = 1; k < states.size(); ++k) EXPECT_LE(states[k - 1].cardinality(), states[k].cardinality());
    const StateIndex index(states);
    for (int k = 0; k < static_cast<int>(states.size()); ++k) EXPECT_EQ(index(states[k]), k);
  }
  EXPECT_THROW(enumerate_schedules(5), std::invalid_argument);
}

TEST(TransitionMatrix, OnePortZeroWeight) {
  auto p = transition_matrix(Matrix<double>(1, 0.0), 1);
  EXPECT_DOUBLE_EQ(p(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(p(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(p(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(p(1, 1), 0.5);
}

TEST(TransitionMatrix, TwoPortsZeroWeight) {
  const auto states = enumerate_schedules(2);
  const StateIndex idx(states);
  auto p = transition_matrix(Matrix<double>(2, 0.0), 2);
  for (int r = 0; r < p.rows(); ++r) EXPECT_NEAR(p.row(r).sum(), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(p(0, idx(DisquoSchedule::from_pairs(2, {{0, 0}, {1, 1}}))), 0.125);
  // X xor X' = {(0,0),(0,1)} is not inside any permutation.
  EXPECT_EQ(p(idx(DisquoSchedule::from_pairs(2, {{0, 0}})), idx(DisquoSchedule::from_pairs(2, {{0, 1}}))), 0.0);
}

TEST(TransitionMatrix, MatchesCoinOutcomeEnumeration) {
  Rng rng(1);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      const auto w = random_weights(n, rng);
      const auto states = enumerate_schedules(n);
      const Eigen::MatrixXd expect = enumerated_transitions(w, states);
      const Eigen::MatrixXd got = transition_matrix(w, n);
      EXPECT_LT((expect - got).cwiseAbs().maxCoeff(), 1e-13) << "n=" << n;
      // A full walk period averages to the same matrix.
      EXPECT_LT((transition_matrix(w, n, ChainHMode::kHamiltonianCycleAveraged) - got).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(TransitionMatrix, MonteCarloRowsAgree) {
  const int n = 2;
  Rng rng(3);
  const auto w = random_weights(n, rng);
  const auto states = enumerate_schedules(n);
  const StateIndex idx(states);
  const auto p = transition_matrix(w, n);
  const auto perms = oracle::all_permutations(n);
  Rng coins(4), pick(5);
  const int trials = 100'000;
  for (int s = 0; s < static_cast<int>(states.size()); ++s) {
    std::vector<long> count(states.size(), 0);
    for (int t = 0; t < trials; ++t)
      ++count[idx(basic_update(states[s], Permutation(perms[pick.below(perms.size())]), w, coins))];
    for (int d = 0; d < static_cast<int>(states.size()); ++d) {
      const double q = p(s, d);
      const double sd = std::sqrt(q * (1 - q) / trials);
      EXPECT_NEAR(static_cast<double>(count[d]) / trials, q, 3 * sd + 1e-12) << s << "->" << d;
    }
  }
}

TEST(Stationary, ProductFormExamples) {
  auto pi1 = stationary_product_form(Matrix<double>(1, 0.0), 1);
  EXPECT_DOUBLE_EQ(pi1(0), 0.5);
  EXPECT_DOUBLE_EQ(pi1(1), 0.5);

  auto pi2 = stationary_product_form(Matrix<double>(2, 0.0), 2);
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(pi2(k), 1.0 / 7, 1e-15);

  Matrix<double> w(2, 0.0);
  w(0, 0) = std::log(2.0);
  auto pi = stationary_product_form(w, 2);
  const double expect[] = {1, 2, 1, 1, 1, 2, 1};
  for (int k = 0; k < 7; ++k) EXPECT_NEAR(pi(k), expect[k] / 9.0, 1e-15) << k;
  EXPECT_NEAR(log_partition_function(w, 2), std::log(9.0), 1e-14);
}

TEST(Stationary, LargeWeightsDoNotOverflow) {
  Matrix<double> w(3, 800.0);
  auto pi = stationary_product_form(w, 3);
  EXPECT_TRUE(pi.allFinite());
  EXPECT_NEAR(pi.sum(), 1.0, 1e-12);
  EXPECT_TRUE(std::isfinite(log_partition_function(w, 3)));
}

TEST(Reversibility, OnePortIsExact) {
  auto chain = build_chain(Matrix<double>(1, 0.0));
  auto r = verify_reversibility(chain.P, chain.pi);
  EXPECT_EQ(r.detailed_balance_residual, 0.0);
  EXPECT_TRUE(r.irreducible);
}

TEST(Reversibility, RandomWeights) {
  Rng rng(11);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 100; ++trial) {
      auto chain = build_chain(random_weights(n, rng, 3.0));
      auto r = verify_reversibility(chain.P, chain.pi);
      EXPECT_LT(r.row_sum_error, 1e-12);
      EXPECT_LT(r.detailed_balance_residual, 1e-10);
      EXPECT_LT(r.stationarity_residual, 1e-10);
      EXPECT_LT(r.pi_sum_error, 1e-12);
      EXPECT_TRUE(r.irreducible);
      EXPECT_LE(r.max_depth_from_empty, n);
    }
}

TEST(Reversibility, FourPortsSpotCheck) {
  Rng rng(12);
  auto chain = build_chain(random_weights(4, rng));
  auto r = verify_reversibility(chain.P, chain.pi);
  EXPECT_LT(r.detailed_balance_residual, 1e-10);
  EXPECT_LT(r.stationarity_residual, 1e-10);
  EXPECT_TRUE(r.irreducible);
}

TEST(AnalysisReport, WeightPresets) {
  EXPECT_EQ(parse_weights("zero", 2), Matrix<double>(2, 0.0));
  EXPECT_EQ(parse_weights("uniform:1.5", 3), Matrix<double>(3, 1.5));
  auto d = parse_weights("diag:2", 2);
  EXPECT_EQ(d(0, 0), 2.0);
  EXPECT_EQ(d(0, 1), 0.0);
  auto r = parse_weights("random:4:0.5", 3);
  for (double v : r.flat()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 0.5);
  }
  EXPECT_EQ(parse_weights("random:4:0.5", 3), r);
  EXPECT_THROW(parse_weights("bogus", 2), std::invalid_argument);
  EXPECT_THROW(parse_weights("uniform:-1", 2), std::invalid_argument);
}

TEST(AnalysisReport, ReportsResidualsAndBounds) {
  auto j = analyze_chain(parse_weights("random:3", 2));
  EXPECT_LT(j["detailed_balance_residual"].get<double>(), 1e-10);
  EXPECT_TRUE(j["irreducible"].get<bool>());
  EXPECT_TRUE(j["mixing"]["t_mix_within_bound"].get<bool>());
  EXPECT_EQ(j["mixing"]["vertices"].get<int>(), 4);
}
