#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disquo/distributed.hpp"
#include "disquo/permutation_stream.hpp"
#include "disquo/random.hpp"
#include "disquo/slot_engine.hpp"
#include "disquo/stats.hpp"
#include "disquo/traffic.hpp"
#include "disquo/weights.hpp"

namespace disquo {

enum class SchedulerKind { kDisquoCentral, kDisquoDistributed, kRrRr, kLqfRr, kOq, kMwm };

SchedulerKind parse_scheduler(std::string_view s);
std::string_view to_string(SchedulerKind k);

enum class TrafficModel { kBernoulli, kBursty };

TrafficModel parse_traffic_model(std::string_view s);
std::string_view to_string(TrafficModel m);

struct ExperimentConfig {
  int n_ports = 16;
  int buffer_cap = 1;
  std::vector<SchedulerKind> schedulers{SchedulerKind::kDisquoDistributed};
  TrafficPattern pattern = TrafficPattern::kUniform;
  std::vector<double> sigmas{0.8};
  std::optional<double> omega;
  TrafficModel traffic = TrafficModel::kBernoulli;
  double burst_alpha = 1.7;
  int burst_lmax = 1000;
  HMode h_mode = HMode::kHamiltonian;
  SignalLoss signal_loss = SignalLoss::kYield;
  WeightConfig weights;
  std::optional<double> epsilon;  // default: admissibility margin of the offered load
  std::uint64_t seed = 1;
  std::int64_t slots = 1'000'000;  // including warmup
  std::int64_t warmup = 100'000;
  int replications = 10;
  int windows = 20;
  int batches = 20;
  double stability_threshold = 0.01;
  int threads = 0;                  // 0: one per hardware thread
  std::int64_t raw_every = 1000;    // slot stride of the raw log

  void validate() const;  // throws std::invalid_argument
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Seed of stream `stream` (1 traffic, 2 coins, 3 permutations, 4 traffic
/// initial phases) of replication `rep`.
std::uint64_t stream_seed(std::uint64_t base, int rep, int stream);

std::unique_ptr<TrafficSource> make_traffic(const ExperimentConfig& c, double sigma, Rng& init_rng);
std::unique_ptr<Scheduler> make_scheduler(SchedulerKind kind, const ExperimentConfig& c, double sigma,
                                          UniformSource& coins, std::uint64_t h_seed);

struct RawSample {
  std::int64_t slot;
  std::int64_t queued;
  std::int64_t buffered;
  std::int64_t departures;  // cumulative since the end of warmup
};

struct ReplicationResult {
  int replication = 0;
  std::vector<double> batch_delay_means;  // batches with at least one departure
  double delay_sum = 0.0;
  std::int64_t departures = 0;
  std::int64_t arrivals = 0;
  std::vector<double> window_means;  // mean cells in the switch per window
  StabilityVerdict verdict;
  std::vector<RawSample> raw;
};

struct RunStats {
  SchedulerKind scheduler = SchedulerKind::kDisquoDistributed;
  int n = 0;
  int k = 0;
  double sigma = 0.0;
  std::optional<double> omega;
  std::optional<double> mean_delay;  // empty when undefined or unstable
  double ci95 = 0.0;
  double throughput = 0.0;  // departures per slot per port
  bool stable = true;
  double slope = 0.0;       // worst replication, cells per slot
  std::vector<ReplicationResult> replications;
};

ReplicationResult run_replication(const ExperimentConfig& c, SchedulerKind kind, double sigma, int rep,
                                  bool keep_raw = false);
RunStats run_point(const ExperimentConfig& c, SchedulerKind kind, double sigma, bool keep_raw = false);
// One RunStats per (sigma, scheduler), sigma-major.
std::vector<RunStats> run_experiment(const ExperimentConfig& c, bool keep_raw = false);

inline constexpr std::string_view kResultsHeader =
    "scheduler,pattern,n,k,sigma,omega,mean_delay,ci95,throughput,stable,slope,slots,seed";

void write_results_csv(std::ostream& os, const ExperimentConfig& c, const std::vector<RunStats>& rows);
void write_raw_jsonl(std::ostream& os, const ExperimentConfig& c, const std::vector<RunStats>& rows);

/// Runs the experiment and writes results.csv (and raw.jsonl) into an
/// existing directory.
std::vector<RunStats> run_to_directory(const ExperimentConfig& c, const std::filesystem::path& out_dir,
                                       bool raw);

/// Sweeps sigma, omega, n or k over `values` and writes one results.csv.
std::vector<RunStats> run_sweep(const ExperimentConfig& base, std::string_view param,
                                const std::vector<double>& values, const std::filesystem::path& out_dir, bool raw);

}  // namespace disquo
