#include <gtest/gtest.h>

#include <cmath>

#include "disquo/traffic.hpp"

using namespace disquo;

namespace {

double row_sum(const RateMatrix& m, int i) {
  double s = 0;
  for (int j = 0; j < m.size(); ++j) s += m(i, j);
  return s;
}
double col_sum(const RateMatrix& m, int j) {
  double s = 0;
  for (int i = 0; i < m.size(); ++i) s += m(i, j);
  return s;
}

}  // namespace

TEST(MakeRates, Uniform) {
  auto m = make_rates(TrafficPattern::kUniform, 32, 0.9);
  for (double v : m.flat()) EXPECT_DOUBLE_EQ(v, 0.9 / 32);
}

TEST(MakeRates, LinDiagonalTwoPorts) {
  auto m = make_rates(TrafficPattern::kLinDiagonal, 2, 0.9);
  EXPECT_NEAR(m(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(m(0, 1), 0.3, 1e-15);
  EXPECT_NEAR(m(1, 1), 0.6, 1e-15);
  EXPECT_NEAR(m(1, 0), 0.3, 1e-15);
}

TEST(MakeRates, LinDiagonalIsArithmeticProgression) {
  const int n = 16;
  const double sigma = 0.95;
  auto m = make_rates(TrafficPattern::kLinDiagonal, n, sigma);
  const double step = 2 * sigma / (n * (n + 1.0));
  for (int i = 0; i < n; ++i) {
    EXPECT_NEAR(row_sum(m, i), sigma, 1e-12);
    EXPECT_NEAR(col_sum(m, i), sigma, 1e-12);
    for (int d = 0; d + 1 < n; ++d)
      EXPECT_NEAR(m(i, (i + d) % n) - m(i, (i + d + 1) % n), step, 1e-15);
  }
}

TEST(MakeRates, HotSpot) {
  auto m = make_rates(TrafficPattern::kHotSpot, 32, 0.9, 0.5);
  for (int i = 0; i < 32; ++i) {
    EXPECT_DOUBLE_EQ(m(i, i), 0.45);
    EXPECT_DOUBLE_EQ(m(i, (i + 1) % 32), 0.45 / 31);
    EXPECT_NEAR(row_sum(m, i), 0.9, 1e-12);
    EXPECT_NEAR(col_sum(m, i), 0.9, 1e-12);
  }
}

TEST(MakeRates, RejectsBadArguments) {
  EXPECT_THROW(make_rates(TrafficPattern::kHotSpot, 4, 0.5), std::invalid_argument);
  EXPECT_THROW(make_rates(TrafficPattern::kHotSpot, 4, 0.5, 1.5), std::invalid_argument);
  EXPECT_THROW(make_rates(TrafficPattern::kHotSpot, 4, 0.5, -0.1), std::invalid_argument);
  EXPECT_THROW(make_rates(TrafficPattern::kUniform, 4, 0.0), std::invalid_argument);
  EXPECT_THROW(parse_pattern("diagonal"), std::invalid_argument);
  EXPECT_NO_THROW(make_rates(TrafficPattern::kUniform, 4, 1.05));
}

TEST(Admissibility, Margins) {
  auto a = admissibility(make_rates(TrafficPattern::kUniform, 16, 0.95));
  EXPECT_TRUE(a.admissible);
  EXPECT_NEAR(a.epsilon, 0.05, 1e-12);

  RateMatrix m(2);
  m(0, 0) = 0.5;
  m(0, 1) = 0.5;
  EXPECT_FALSE(admissibility(m).admissible);
  EXPECT_EQ(admissibility(m).epsilon, 0.0);

  auto h = admissibility(make_rates(TrafficPattern::kHotSpot, 32, 0.9, 0.5));
  EXPECT_TRUE(h.admissible);
  EXPECT_NEAR(h.epsilon, 0.1, 1e-12);

  EXPECT_FALSE(admissibility(make_rates(TrafficPattern::kUniform, 8, 1.05)).admissible);
}

TEST(BernoulliArrivals, DegenerateRates) {
  Rng rng(3);
  RateMatrix zero(3, 0.0), one(3, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const auto a0 = bernoulli_arrivals(zero, rng);
    const auto a1 = bernoulli_arrivals(one, rng);
    for (auto v : a0.flat()) ASSERT_EQ(v, 0);
    for (auto v : a1.flat()) ASSERT_EQ(v, 1);
  }
}

TEST(BernoulliArrivals, EmpiricalRateWithinBinomialBounds) {
  Rng rng(11);
  RateMatrix m(1, 0.25);
  const int trials = 1'000'000;
  long hits = 0;
  for (int t = 0; t < trials; ++t) hits += bernoulli_arrivals(m, rng)(0, 0);
  const double sd = std::sqrt(0.25 * 0.75 / trials);
  EXPECT_NEAR(static_cast<double>(hits) / trials, 0.25, 3 * sd);
}

TEST(BernoulliSource, PerVoqRatesWithinBinomialBounds) {
  RateMatrix m(2);
  m(0, 0) = 0.25;
  m(0, 1) = 0.6;
  m(1, 0) = 0.01;
  m(1, 1) = 1.0;
  BernoulliSource src(m);
  Rng rng(12);
  const int slots = 1'000'000;
  Matrix<long> count(2, 0);
  std::vector<Pair> arr;
  for (int t = 0; t < slots; ++t) {
    src.generate(rng, arr);
    Matrix<int> seen(2, 0);
    for (auto [i, j] : arr) {
      ++count(i, j);
      ASSERT_EQ(++seen(i, j), 1) << "more than one cell per VOQ per slot";
    }
  }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double p = m(i, j);
      const double sd = std::sqrt(p * (1 - p) / slots);
      EXPECT_NEAR(static_cast<double>(count(i, j)) / slots, p, 3 * sd + 1e-12) << i << "," << j;
    }
}

TEST(BernoulliSource, GapIsGeometric) {
  // P(gap = 0) = p and P(gap >= k) = (1-p)^k.
  Rng rng(13);
  const double p = 0.3;
  const int draws = 200'000;
  long zero = 0, at_least3 = 0;
  for (int d = 0; d < draws; ++d) {
    const auto g = BernoulliSource::draw_gap(p, rng);
    zero += g == 0;
    at_least3 += g >= 3;
  }
  const double p3 = std::pow(1 - p, 3);
  EXPECT_NEAR(static_cast<double>(zero) / draws, p, 3 * std::sqrt(p * (1 - p) / draws));
  EXPECT_NEAR(static_cast<double>(at_least3) / draws, p3, 3 * std::sqrt(p3 * (1 - p3) / draws));
}

TEST(TruncatedPareto, NormalizerAndMean) {
  // High-precision values of 1 / sum l^-1.7 and of the mean, l = 1..1000.
  TruncatedPareto d(1.7, 1000);
  EXPECT_NEAR(d.probability(1), 0.48948939463974094686, 1e-12);
  EXPECT_NEAR(d.probability(10), 0.48948939463974094686 * std::pow(10.0, -1.7), 1e-12);
  EXPECT_NEAR(exact_burst_mean(1.7, 1000), 11.6024603964848852723, 1e-9);
  EXPECT_NEAR(d.mean(), 11.6024603964848852723, 1e-9);
  EXPECT_NEAR(exact_burst_mean(1.7, 1000), 11.6, 0.1);
}

TEST(TruncatedPareto, DegenerateSupport) {
  Rng rng(1);
  EXPECT_DOUBLE_EQ(exact_burst_mean(1.7, 1), 1.0);
  for (int t = 0; t < 1000; ++t) ASSERT_EQ(pareto_burst(1.7, 1, rng), 1);
}

TEST(TruncatedPareto, EmpiricalMeanWithinOnePercent) {
  TruncatedPareto d(1.7, 1000);
  Rng rng(21);
  const int draws = 1'000'000;
  double sum = 0;
  for (int t = 0; t < draws; ++t) {
    const int l = d.sample(rng);
    ASSERT_GE(l, 1);
    ASSERT_LE(l, 1000);
    sum += l;
  }
  // Oracle: direct summation of l * l^-1.7 / sum l^-1.7.
  double norm = 0, first = 0;
  for (int l = 1; l <= 1000; ++l) {
    norm += std::pow(l, -1.7);
    first += l * std::pow(l, -1.7);
  }
  EXPECT_NEAR(sum / draws, first / norm, 0.01 * first / norm);
}

TEST(TruncatedPareto, RejectsBadParameters) {
  EXPECT_THROW(TruncatedPareto(1.0, 10), std::invalid_argument);
  EXPECT_THROW(TruncatedPareto(1.7, 0), std::invalid_argument);
}

TEST(BurstySource, PerInputLoadAndDestinations) {
  const int n = 4;
  const double sigma = 0.6;
  auto lambda = make_rates(TrafficPattern::kHotSpot, n, sigma, 0.5);
  Rng init(31);
  BurstySource src(lambda, 1.7, 1000, init);
  Rng rng(32);
  const long slots = 10'000'000;
  std::vector<long> per_input(n, 0), diagonal(n, 0);
  std::vector<int> last_dest(n, -1);
  std::vector<long> last_slot(n, -2);
  std::vector<Pair> arr;
  for (long t = 0; t < slots; ++t) {
    src.generate(rng, arr);
    std::vector<int> seen(n, 0);
    for (auto [i, j] : arr) {
      ASSERT_EQ(++seen[i], 1) << "at most one cell per input per slot";
      ++per_input[i];
      diagonal[i] += (i == j);
      last_dest[i] = j;
      last_slot[i] = t;
    }
  }
  for (int i = 0; i < n; ++i) {
    EXPECT_NEAR(static_cast<double>(per_input[i]) / slots, sigma, 0.02 * sigma) << "input " << i;
    EXPECT_NEAR(static_cast<double>(diagonal[i]) / per_input[i], 0.5, 0.05) << "input " << i;
  }
  EXPECT_NEAR(src.mean_idle(0), exact_burst_mean(1.7, 1000) * (1 - sigma) / sigma, 1e-9);
}
