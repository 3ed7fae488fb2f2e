#include <gtest/gtest.h>

#include <vector>

#include "disquo/random.hpp"
#include "disquo/stats.hpp"

using namespace disquo;

TEST(BatchMeans, ConstantSeries) {
  std::vector<double> s(1000, 3.5);
  auto ci = batch_means_ci(s, 20);
  EXPECT_DOUBLE_EQ(ci.mean, 3.5);
  EXPECT_EQ(ci.half_width, 0.0);
  EXPECT_EQ(ci.batches, 20);
}

TEST(BatchMeans, AlternatingSeries) {
  std::vector<double> s(1000);
  for (int k = 0; k < 1000; ++k) s[k] = k % 2;
  EXPECT_DOUBLE_EQ(batch_means_ci(s, 20).mean, 0.5);
}

TEST(BatchMeans, RejectsShortSeries) {
  std::vector<double> s(39, 1.0);
  EXPECT_THROW(batch_means_ci(s, 20), std::invalid_argument);
  EXPECT_THROW(batch_means_ci(s, 1), std::invalid_argument);
}

TEST(BatchMeans, CoverageOfUniformMean) {
  Rng rng(123);
  int covered = 0;
  std::vector<double> s(100'000);
  for (int rep = 0; rep < 100; ++rep) {
    for (auto& v : s) v = rng.uniform();
    auto ci = batch_means_ci(s, 20);
    covered += std::abs(ci.mean - 0.5) <= ci.half_width;
  }
  EXPECT_GE(covered, 93);
}

TEST(StudentT, KnownQuantiles) {
  EXPECT_NEAR(student_t_975(1), 12.706204736174698, 1e-9);
  EXPECT_NEAR(student_t_975(19), 2.0930240544083096, 1e-9);
  EXPECT_NEAR(student_t_975(1000000), 1.959963984540054, 1e-5);
}

TEST(StabilityProbe, ConstantAndLinear) {
  std::vector<double> flat(20, 100.0);
  auto a = stability_probe(flat);
  EXPECT_TRUE(a.stable);
  EXPECT_EQ(a.slope, 0.0);

  std::vector<double> line(20);
  for (int k = 0; k < 20; ++k) line[k] = k + 0.01 * (k % 3);
  auto b = stability_probe(line);
  EXPECT_FALSE(b.stable);
  EXPECT_NEAR(b.slope, 1.0, 0.01);
}

TEST(StabilityProbe, WindowLengthScalesSlope) {
  std::vector<double> line(20);
  for (int k = 0; k < 20; ++k) line[k] = 50.0 * k + (k % 2);
  auto v = stability_probe(line, 1000.0);
  EXPECT_NEAR(v.slope, 0.05, 1e-3);
  EXPECT_FALSE(v.stable);
  // Slow drift below the threshold is stable.
  for (int k = 0; k < 20; ++k) line[k] = 5.0 * k + (k % 2);
  EXPECT_TRUE(stability_probe(line, 1000.0).stable);
}

TEST(StabilityProbe, NoiseIsStable) {
  Rng rng(9);
  std::vector<double> noise(20);
  for (auto& v : noise) v = 1000 + 50 * (rng.uniform() - 0.5);
  EXPECT_TRUE(stability_probe(noise, 1000.0).stable);
}

TEST(StabilityProbe, NeedsTenWindows) {
  std::vector<double> few(9, 1.0);
  EXPECT_THROW(stability_probe(few), std::invalid_argument);
}
