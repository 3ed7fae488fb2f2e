#include "disquo/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "disquo/baselines.hpp"
#include "disquo/basic_update.hpp"
#include "disquo/distributed.hpp"

namespace disquo {

SchedulerKind parse_scheduler(std::string_view s) {
  if (s == "disquo-central") return SchedulerKind::kDisquoCentral;
  if (s == "disquo-distributed") return SchedulerKind::kDisquoDistributed;
  if (s == "rr-rr") return SchedulerKind::kRrRr;
  if (s == "lqf-rr") return SchedulerKind::kLqfRr;
  if (s == "oq") return SchedulerKind::kOq;
  if (s == "mwm") return SchedulerKind::kMwm;
  throw std::invalid_argument("unknown scheduler: " + std::string(s));
}

std::string_view to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::kDisquoCentral: return "disquo-central";
    case SchedulerKind::kDisquoDistributed: return "disquo-distributed";
    case SchedulerKind::kRrRr: return "rr-rr";
    case SchedulerKind::kLqfRr: return "lqf-rr";
    case SchedulerKind::kOq: return "oq";
    case SchedulerKind::kMwm: return "mwm";
  }
  return "?";
}

TrafficModel parse_traffic_model(std::string_view s) {
  if (s == "bernoulli") return TrafficModel::kBernoulli;
  if (s == "bursty") return TrafficModel::kBursty;
  throw std::invalid_argument("unknown traffic model: " + std::string(s));
}

std::string_view to_string(TrafficModel m) { return m == TrafficModel::kBernoulli ? "bernoulli" : "bursty"; }

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw std::invalid_argument("config: " + m); };
  if (n_ports < 1) fail("n_ports must be >= 1");
  if (buffer_cap < 1) fail("buffer_cap must be >= 1");
  if (schedulers.empty()) fail("no scheduler given");
  if (sigmas.empty()) fail("no sigma given");
  for (double s : sigmas)
    if (!(s >= 0.0)) fail("sigma must be non-negative");
  if ((pattern == TrafficPattern::kHotSpot) != omega.has_value()) fail("omega is required for, and only for, hot-spot");
  if (omega && (*omega < 0.0 || *omega > 1.0)) fail("omega must lie in [0, 1]");
  if (traffic == TrafficModel::kBursty && (!(burst_alpha > 1.0) || burst_lmax < 1)) fail("bad burst parameters");
  if (!(slots > warmup && warmup >= 0)) fail("need slots > warmup >= 0");
  if (replications < 1) fail("replications must be >= 1");
  if (windows < 10) fail("windows must be >= 10");
  if (batches < 2) fail("batches must be >= 2");
  if (slots - warmup < static_cast<std::int64_t>(std::max(windows, batches))) fail("measured period too short");
  if (epsilon && !(*epsilon > 0.0 && *epsilon < 1.0)) fail("epsilon must lie in (0, 1)");
  if (raw_every < 1) fail("raw_every must be >= 1");
  for (SchedulerKind k : schedulers)
    if (k == SchedulerKind::kDisquoDistributed && buffer_cap != 1)
      fail("disquo-distributed signals through one-cell buffers; use disquo-central for buffer_cap > 1");
}

namespace {

template <typename T>
std::vector<T> one_or_many(const nlohmann::json& v) {
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

}  // namespace

ExperimentConfig config_from_json(const nlohmann::json& j) {
  static const std::vector<std::string> known = {
      "n_ports", "buffer_cap", "scheduler", "pattern", "sigma", "omega", "traffic", "burst_alpha",
      "burst_lmax", "h_mode", "signal_loss", "qmax_mode", "g_choice", "epsilon", "seed", "slots", "warmup",
      "replications", "windows", "batches", "stability_threshold", "threads", "raw_every"};
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("config: unknown key '" + key + "'");

  ExperimentConfig c;
  c.n_ports = j.value("n_ports", c.n_ports);
  c.buffer_cap = j.value("buffer_cap", c.buffer_cap);
  if (j.contains("scheduler")) {
    c.schedulers.clear();
    for (const auto& s : one_or_many<std::string>(j["scheduler"])) c.schedulers.push_back(parse_scheduler(s));
  }
  if (j.contains("pattern")) c.pattern = parse_pattern(j["pattern"].get<std::string>());
  if (j.contains("sigma")) c.sigmas = one_or_many<double>(j["sigma"]);
  if (j.contains("omega") && !j["omega"].is_null()) c.omega = j["omega"].get<double>();
  if (j.contains("traffic")) c.traffic = parse_traffic_model(j["traffic"].get<std::string>());
  c.burst_alpha = j.value("burst_alpha", c.burst_alpha);
  c.burst_lmax = j.value("burst_lmax", c.burst_lmax);
  if (j.contains("h_mode")) c.h_mode = parse_h_mode(j["h_mode"].get<std::string>());
  if (j.contains("signal_loss")) c.signal_loss = parse_signal_loss(j["signal_loss"].get<std::string>());
  if (j.contains("qmax_mode")) c.weights.qmax_mode = parse_qmax_mode(j["qmax_mode"].get<std::string>());
  if (j.contains("g_choice")) c.weights.g_choice = parse_g_choice(j["g_choice"].get<std::string>());
  if (j.contains("epsilon") && !j["epsilon"].is_null()) c.epsilon = j["epsilon"].get<double>();
  c.seed = j.value("seed", c.seed);
  c.slots = j.value("slots", c.slots);
  c.warmup = j.value("warmup", c.warmup);
  c.replications = j.value("replications", c.replications);
  c.windows = j.value("windows", c.windows);
  c.batches = j.value("batches", c.batches);
  c.stability_threshold = j.value("stability_threshold", c.stability_threshold);
  c.threads = j.value("threads", c.threads);
  c.raw_every = j.value("raw_every", c.raw_every);
  c.validate();
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["n_ports"] = c.n_ports;
  j["buffer_cap"] = c.buffer_cap;
  std::vector<std::string> s;
  for (auto k : c.schedulers) s.emplace_back(to_string(k));
  j["scheduler"] = s;
  j["pattern"] = std::string(to_string(c.pattern));
  j["sigma"] = c.sigmas;
  j["omega"] = c.omega ? nlohmann::json(*c.omega) : nlohmann::json(nullptr);
  j["traffic"] = std::string(to_string(c.traffic));
  j["burst_alpha"] = c.burst_alpha;
  j["burst_lmax"] = c.burst_lmax;
  j["h_mode"] = std::string(to_string(c.h_mode));
  j["signal_loss"] = std::string(to_string(c.signal_loss));
  j["qmax_mode"] = std::string(to_string(c.weights.qmax_mode));
  j["g_choice"] = std::string(to_string(c.weights.g_choice));
  j["epsilon"] = c.epsilon ? nlohmann::json(*c.epsilon) : nlohmann::json(nullptr);
  j["seed"] = c.seed;
  j["slots"] = c.slots;
  j["warmup"] = c.warmup;
  j["replications"] = c.replications;
  j["windows"] = c.windows;
  j["batches"] = c.batches;
  j["stability_threshold"] = c.stability_threshold;
  j["threads"] = c.threads;
  j["raw_every"] = c.raw_every;
  return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  return config_from_json(nlohmann::json::parse(in));
}

std::uint64_t stream_seed(std::uint64_t base, int rep, int stream) {
  return derive_seed(derive_seed(base, static_cast<std::uint64_t>(rep)), static_cast<std::uint64_t>(stream));
}

std::unique_ptr<TrafficSource> make_traffic(const ExperimentConfig& c, double sigma, Rng& init_rng) {
  RateMatrix lambda = sigma > 0.0 ? make_rates(c.pattern, c.n_ports, sigma, c.omega) : RateMatrix(c.n_ports, 0.0);
  if (sigma <= 0.0) return std::make_unique<SilentSource>(c.n_ports);
  if (c.traffic == TrafficModel::kBursty)
    return std::make_unique<BurstySource>(lambda, c.burst_alpha, c.burst_lmax, init_rng);
  return std::make_unique<BernoulliSource>(std::move(lambda));
}

namespace {

WeightConfig weights_for(const ExperimentConfig& c, double sigma) {
  WeightConfig w = c.weights;
  if (c.epsilon) {
    w.epsilon = *c.epsilon;
  } else if (sigma > 0.0) {
    const Admissibility a = admissibility(make_rates(c.pattern, c.n_ports, sigma, c.omega));
    if (a.admissible) w.epsilon = a.epsilon;
  }
  return w;
}

}  // namespace

std::unique_ptr<Scheduler> make_scheduler(SchedulerKind kind, const ExperimentConfig& c, double sigma,
                                          UniformSource& coins, std::uint64_t h_seed) {
  const int n = c.n_ports;
  switch (kind) {
    case SchedulerKind::kDisquoCentral:
      return std::make_unique<CentralDisquo>(n, weights_for(c, sigma), PermutationStream(n, c.h_mode, h_seed), coins);
    case SchedulerKind::kDisquoDistributed:
      return std::make_unique<DistributedDisquo>(n, weights_for(c, sigma), PermutationStream(n, c.h_mode, h_seed), coins,
                                                 c.signal_loss);
    case SchedulerKind::kRrRr:
      return std::make_unique<BaselineScheduler>(BaselineKind::kRrRr, n);
    case SchedulerKind::kLqfRr:
      return std::make_unique<BaselineScheduler>(BaselineKind::kLqfRr, n);
    case SchedulerKind::kMwm:
      return std::make_unique<MwmScheduler>(n, c.weights.g_choice);
    case SchedulerKind::kOq:
      break;
  }
  throw std::invalid_argument("the output-queued reference is not a crossbar scheduler");
}

ReplicationResult run_replication(const ExperimentConfig& c, SchedulerKind kind, double sigma, int rep, bool keep_raw) {
  const int n = c.n_ports;
  Rng traffic_rng(stream_seed(c.seed, rep, 1));
  Rng coins(stream_seed(c.seed, rep, 2));
  Rng init_rng(stream_seed(c.seed, rep, 4));
  auto traffic = make_traffic(c, sigma, init_rng);

  const std::int64_t measured = c.slots - c.warmup;
  const std::int64_t batch_len = measured / c.batches;
  const std::int64_t window_len = measured / c.windows;

  ReplicationResult r;
  r.replication = rep;
  std::vector<double> batch_sum(c.batches, 0.0);
  std::vector<std::int64_t> batch_cnt(c.batches, 0);
  std::vector<double> window_sum(c.windows, 0.0);

  auto record = [&](std::int64_t t, std::int64_t delay_count_add, double delay_sum_add, std::int64_t in_system,
                    std::int64_t queued, std::int64_t buffered) {
    if (t < c.warmup) return;
    const std::int64_t m = t - c.warmup;
    const std::int64_t b = std::min<std::int64_t>(m / std::max<std::int64_t>(batch_len, 1), c.batches - 1);
    const std::int64_t w = std::min<std::int64_t>(m / std::max<std::int64_t>(window_len, 1), c.windows - 1);
    batch_sum[b] += delay_sum_add;
    batch_cnt[b] += delay_count_add;
    r.delay_sum += delay_sum_add;
    r.departures += delay_count_add;
    window_sum[w] += static_cast<double>(in_system);
    if (keep_raw && m % c.raw_every == 0) r.raw.push_back({t, queued, buffered, r.departures});
  };

  if (kind == SchedulerKind::kOq) {
    OutputQueuedSwitch oq(n);
    std::vector<Pair> arrivals;
    for (std::int64_t t = 0; t < c.slots; ++t) {
      traffic->generate(traffic_rng, arrivals);
      const auto deps = oq.step(arrivals);
      if (t >= c.warmup) r.arrivals += static_cast<std::int64_t>(arrivals.size());
      double ds = 0.0;
      for (const auto& d : deps) ds += static_cast<double>(d.delay);
      record(t, static_cast<std::int64_t>(deps.size()), ds, oq.backlog(), oq.backlog(), 0);
    }
  } else {
    SwitchState state(n, c.buffer_cap);
    auto sched = make_scheduler(kind, c, sigma, coins, stream_seed(c.seed, rep, 3));
    SlotReport report;
    for (std::int64_t t = 0; t < c.slots; ++t) {
      step_slot(state, *sched, *traffic, traffic_rng, report);
      if (t >= c.warmup) r.arrivals += static_cast<std::int64_t>(report.arrivals.size());
      double ds = 0.0;
      for (const auto& d : report.output_departures) ds += static_cast<double>(d.delay);
      record(t, static_cast<std::int64_t>(report.output_departures.size()), ds,
             state.total_queued() + state.total_buffered(), state.total_queued(), state.total_buffered());
    }
  }

  for (int b = 0; b < c.batches; ++b)
    if (batch_cnt[b] > 0) r.batch_delay_means.push_back(batch_sum[b] / static_cast<double>(batch_cnt[b]));
  for (int w = 0; w < c.windows; ++w) {
    const std::int64_t len = w + 1 < c.windows ? window_len : measured - window_len * (c.windows - 1);
    r.window_means.push_back(window_sum[w] / static_cast<double>(len));
  }
  r.verdict = stability_probe(r.window_means, static_cast<double>(window_len), c.stability_threshold);
  return r;
}

RunStats run_point(const ExperimentConfig& c, SchedulerKind kind, double sigma, bool keep_raw) {
  RunStats s;
  s.scheduler = kind;
  s.n = c.n_ports;
  s.k = c.buffer_cap;
  s.sigma = sigma;
  s.omega = c.omega;
  s.replications.resize(c.replications);

  int threads = c.threads > 0 ? c.threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, c.replications);
  if (threads <= 1) {
    for (int rep = 0; rep < c.replications; ++rep) s.replications[rep] = run_replication(c, kind, sigma, rep, keep_raw);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (int rep = t; rep < c.replications; rep += threads)
            s.replications[rep] = run_replication(c, kind, sigma, rep, keep_raw);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    pool.clear();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<double> batches;
  std::int64_t departures = 0;
  s.slope = -std::numeric_limits<double>::infinity();
  for (const auto& r : s.replications) {
    batches.insert(batches.end(), r.batch_delay_means.begin(), r.batch_delay_means.end());
    departures += r.departures;
    s.stable = s.stable && r.verdict.stable;
    s.slope = std::max(s.slope, r.verdict.slope);
  }
  const double measured = static_cast<double>(c.slots - c.warmup);
  s.throughput = static_cast<double>(departures) / (measured * c.n_ports * c.replications);
  if (s.stable && batches.size() >= 2) {
    const ConfidenceInterval ci = mean_ci(batches);
    s.mean_delay = ci.mean;
    s.ci95 = ci.half_width;
  }
  return s;
}

std::vector<RunStats> run_experiment(const ExperimentConfig& c, bool keep_raw) {
  c.validate();
  std::vector<RunStats> out;
  for (double sigma : c.sigmas)
    for (SchedulerKind k : c.schedulers) out.push_back(run_point(c, k, sigma, keep_raw));
  return out;
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

void write_results_csv(std::ostream& os, const ExperimentConfig& c, const std::vector<RunStats>& rows) {
  os << kResultsHeader << '\n';
  for (const auto& r : rows) {
    os << to_string(r.scheduler) << ',' << to_string(c.pattern) << ',' << r.n << ',' << r.k << ',' << num(r.sigma)
       << ',' << (r.omega ? num(*r.omega) : "") << ',' << (r.mean_delay ? num(*r.mean_delay) : "") << ','
       << (r.mean_delay ? num(r.ci95) : "") << ',' << num(r.throughput) << ',' << (r.stable ? "true" : "false") << ','
       << num(r.slope) << ',' << c.slots << ',' << c.seed << '\n';
  }
}

void write_raw_jsonl(std::ostream& os, const ExperimentConfig& c, const std::vector<RunStats>& rows) {
  for (const auto& r : rows)
    for (const auto& rep : r.replications)
      for (const auto& s : rep.raw) {
        nlohmann::json j;
        j["scheduler"] = std::string(to_string(r.scheduler));
        j["pattern"] = std::string(to_string(c.pattern));
        j["n"] = r.n;
        j["k"] = r.k;
        j["sigma"] = r.sigma;
        j["replication"] = rep.replication;
        j["slot"] = s.slot;
        j["queued"] = s.queued;
        j["buffered"] = s.buffered;
        j["departures"] = s.departures;
        os << j.dump() << '\n';
      }
}

namespace {

void write_outputs(const ExperimentConfig& c, const std::vector<RunStats>& rows, const std::filesystem::path& out_dir,
                   bool raw) {
  std::ofstream csv(out_dir / "results.csv");
  if (!csv) throw std::runtime_error("cannot write " + (out_dir / "results.csv").string());
  write_results_csv(csv, c, rows);
  if (raw) {
    std::ofstream js(out_dir / "raw.jsonl");
    if (!js) throw std::runtime_error("cannot write " + (out_dir / "raw.jsonl").string());
    write_raw_jsonl(js, c, rows);
  }
}

void require_dir(const std::filesystem::path& out_dir) {
  if (!std::filesystem::is_directory(out_dir))
    throw std::invalid_argument("output directory does not exist: " + out_dir.string());
}

}  // namespace

std::vector<RunStats> run_to_directory(const ExperimentConfig& c, const std::filesystem::path& out_dir, bool raw) {
  require_dir(out_dir);
  auto rows = run_experiment(c, raw);
  write_outputs(c, rows, out_dir, raw);
  return rows;
}

std::vector<RunStats> run_sweep(const ExperimentConfig& base, std::string_view param, const std::vector<double>& values,
                                const std::filesystem::path& out_dir, bool raw) {
  require_dir(out_dir);
  if (values.empty()) throw std::invalid_argument("sweep: no values");
  std::vector<RunStats> rows;
  if (param == "sigma") {
    ExperimentConfig c = base;
    c.sigmas = values;
    rows = run_experiment(c, raw);
  } else if (param == "omega" || param == "n" || param == "k") {
    for (double v : values) {
      ExperimentConfig c = base;
      if (param == "omega") c.omega = v;
      if (param == "n" || param == "k") {
        if (v != std::floor(v) || v < 1) throw std::invalid_argument("sweep: n and k take positive integers");
        (param == "n" ? c.n_ports : c.buffer_cap) = static_cast<int>(v);
      }
      auto part = run_experiment(c, raw);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  } else {
    throw std::invalid_argument("sweep: unsupported parameter '" + std::string(param) + "' (sigma, omega, n, k)");
  }
  write_outputs(base, rows, out_dir, raw);
  return rows;
}

}  // namespace disquo
