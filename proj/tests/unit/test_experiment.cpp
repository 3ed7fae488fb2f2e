#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "disquo/experiment.hpp"

using namespace disquo;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n_ports = 4;
  c.schedulers = {SchedulerKind::kDisquoDistributed, SchedulerKind::kOq};
  c.sigmas = {0.5};
  c.slots = 20'000;
  c.warmup = 2'000;
  c.replications = 2;
  c.seed = 3;
  c.threads = 1;
  return c;
}

fs::path scratch_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("disquo_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  auto c = small_config();
  c.pattern = TrafficPattern::kHotSpot;
  c.omega = 0.5;
  c.traffic = TrafficModel::kBursty;
  c.h_mode = HMode::kSharedRandom;
  c.weights.qmax_mode = QmaxMode::kBroadcastEstimate;
  c.epsilon = 0.1;
  auto back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(config_from_json(nlohmann::json{{"n_port", 4}}), std::invalid_argument);
  EXPECT_THROW(config_from_json(nlohmann::json::array()), std::invalid_argument);
  auto c = small_config();
  c.warmup = c.slots;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.pattern = TrafficPattern::kHotSpot;  // no omega
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config();
  c.buffer_cap = 2;  // distributed needs K = 1
  EXPECT_THROW(c.validate(), std::invalid_argument);
  EXPECT_THROW(parse_scheduler("islip"), std::invalid_argument);
}

TEST(Config, ScalarOrArrayFields) {
  auto c = config_from_json(nlohmann::json{{"scheduler", "rr-rr"}, {"sigma", 0.7}, {"n_ports", 8}});
  ASSERT_EQ(c.schedulers.size(), 1u);
  EXPECT_EQ(c.schedulers[0], SchedulerKind::kRrRr);
  EXPECT_EQ(c.sigmas, std::vector<double>{0.7});
  EXPECT_EQ(c.n_ports, 8);
}

TEST(Seeds, StreamsAreDistinctAndStable) {
  EXPECT_EQ(stream_seed(1, 0, 1), stream_seed(1, 0, 1));
  EXPECT_NE(stream_seed(1, 0, 1), stream_seed(1, 0, 2));
  EXPECT_NE(stream_seed(1, 0, 1), stream_seed(1, 1, 1));
  EXPECT_NE(stream_seed(1, 0, 1), stream_seed(2, 0, 1));
}

TEST(Experiment, ZeroRateIsStableWithUndefinedDelay) {
  auto c = small_config();
  c.sigmas = {1e-12};
  for (const auto& r : run_experiment(c)) {
    EXPECT_EQ(r.throughput, 0.0);
    EXPECT_FALSE(r.mean_delay.has_value());
    EXPECT_TRUE(r.stable);
  }
}

TEST(Experiment, ThroughputTracksOfferedLoad) {
  auto c = small_config();
  c.schedulers = {SchedulerKind::kDisquoCentral, SchedulerKind::kDisquoDistributed, SchedulerKind::kRrRr,
                  SchedulerKind::kLqfRr, SchedulerKind::kMwm, SchedulerKind::kOq};
  c.h_mode = HMode::kSharedRandom;
  for (const auto& r : run_experiment(c)) {
    EXPECT_LE(r.throughput, 1.0);
    EXPECT_NEAR(r.throughput, 0.5, 0.03) << to_string(r.scheduler);
    EXPECT_TRUE(r.stable) << to_string(r.scheduler);
    ASSERT_TRUE(r.mean_delay.has_value());
    EXPECT_GE(*r.mean_delay, 1.0);
  }
}

TEST(Experiment, OverloadIsFlaggedWithoutDelay) {
  auto c = small_config();
  c.schedulers = {SchedulerKind::kRrRr};
  c.sigmas = {1.3};
  c.slots = 50'000;
  auto rows = run_experiment(c);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].stable);
  EXPECT_GT(rows[0].slope, 0.01);
  EXPECT_FALSE(rows[0].mean_delay.has_value());
  EXPECT_LE(rows[0].throughput, 1.0);
}

TEST(Experiment, ResultsCsvHeaderAndRows) {
  auto dir = scratch_dir("csv");
  auto c = small_config();
  run_to_directory(c, dir, true);
  std::ifstream in(dir / "results.csv");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "scheduler,pattern,n,k,sigma,omega,mean_delay,ci95,throughput,stable,slope,slots,seed");
  int rows = 0;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 12);
  }
  EXPECT_EQ(rows, 2);
  std::ifstream raw(dir / "raw.jsonl");
  std::string first;
  ASSERT_TRUE(std::getline(raw, first));
  auto j = nlohmann::json::parse(first);
  EXPECT_TRUE(j.contains("slot"));
  EXPECT_TRUE(j.contains("queued"));
}

TEST(Experiment, ByteIdenticalReruns) {
  auto a = scratch_dir("rerun_a"), b = scratch_dir("rerun_b");
  auto c = small_config();
  run_to_directory(c, a, true);
  c.threads = 2;  // thread count must not change results
  run_to_directory(c, b, true);
  EXPECT_EQ(slurp(a / "results.csv"), slurp(b / "results.csv"));
  EXPECT_EQ(slurp(a / "raw.jsonl"), slurp(b / "raw.jsonl"));
}

TEST(Experiment, MissingOutputDirectoryIsAnError) {
  auto c = small_config();
  EXPECT_THROW(run_to_directory(c, fs::temp_directory_path() / "disquo_no_such_dir" / "x", false),
               std::invalid_argument);
}

TEST(Experiment, SweepWritesOneRowPerValue) {
  auto dir = scratch_dir("sweep");
  auto c = small_config();
  c.schedulers = {SchedulerKind::kRrRr};
  auto rows = run_sweep(c, "sigma", {0.2, 0.4, 0.6}, dir, false);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rows[2].sigma, 0.6);
  auto nrows = run_sweep(c, "n", {2, 3}, dir, false);
  ASSERT_EQ(nrows.size(), 2u);
  EXPECT_EQ(nrows[1].n, 3);
  EXPECT_THROW(run_sweep(c, "alpha", {1.0}, dir, false), std::invalid_argument);
}
