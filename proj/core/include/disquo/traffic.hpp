#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "disquo/matrix.hpp"
#include "disquo/random.hpp"
#include "disquo/schedule.hpp"

namespace disquo {

enum class TrafficPattern { kUniform, kLinDiagonal, kHotSpot };

TrafficPattern parse_pattern(std::string_view name);
std::string_view to_string(TrafficPattern p);

/// Per-VOQ arrival rates lambda_ij in cells/slot.
using RateMatrix = Matrix<double>;

/// uniform:      lambda_ij = sigma / N
/// lin-diagonal: lambda_{i,(i+d) mod N} = 2 sigma (N - d) / (N (N + 1)), d = 0..N-1
/// hot-spot:     lambda_ii = omega sigma, lambda_ij = (1 - omega) sigma / (N - 1)
RateMatrix make_rates(TrafficPattern pattern, int n, double sigma,
                      std::optional<double> omega = std::nullopt);

struct Admissibility {
  bool admissible = false;
  double epsilon = 0.0;   // 1 - max load; 0 when inadmissible
  double max_load = 0.0;  // max over all row and column sums
};

Admissibility admissibility(const RateMatrix& lambda);

/// One independent Bernoulli(lambda_ij) draw per VOQ, row-major order.
Matrix<std::uint8_t> bernoulli_arrivals(const RateMatrix& lambda, Rng& rng);

/// Truncated Pareto law P(l) = c / l^alpha on {1, ..., l_max}, sampled by
/// inverse CDF over a precomputed table.
class TruncatedPareto {
 public:
  TruncatedPareto(double alpha, int l_max);

  int sample(UniformSource& rng) const;
  double mean() const { return mean_; }
  double probability(int l) const;
  int l_max() const { return static_cast<int>(cdf_.size()); }
  double alpha() const { return alpha_; }

 private:
  double alpha_;
  std::vector<double> cdf_;
  double mean_ = 0.0;
};

int pareto_burst(double alpha, int l_max, UniformSource& rng);
double exact_burst_mean(double alpha, int l_max);

/// Produces the cells that arrive at the end of a slot.
class TrafficSource {
 public:
  virtual ~TrafficSource() = default;
  virtual int n_ports() const = 0;
  virtual void generate(Rng& rng, std::vector<Pair>& arrivals) = 0;
};

/// Independent Bernoulli(lambda_ij) arrivals per VOQ and slot. Sampled
/// through geometric inter-arrival gaps, so a slot costs one draw per
/// arrival rather than one per VOQ; the process is the same.
class BernoulliSource final : public TrafficSource {
 public:
  explicit BernoulliSource(RateMatrix lambda) : lambda_(std::move(lambda)) {}
  int n_ports() const override { return lambda_.size(); }
  void generate(Rng& rng, std::vector<Pair>& arrivals) override;

  static std::int64_t draw_gap(double p, Rng& rng);

 private:
  RateMatrix lambda_;
  std::vector<std::int64_t> wait_;  // slots until each VOQ's next arrival
};

/// On/off bursty source. Each input alternates between a burst of
/// Pareto-distributed length (one cell per slot, single destination drawn
/// from the input's normalized rate row) and a geometric idle gap whose mean
/// is burst_mean * (1 - sigma_i) / sigma_i, so the long-run load of input i
/// equals its row sum sigma_i.
class BurstySource final : public TrafficSource {
 public:
  BurstySource(const RateMatrix& lambda, double alpha, int l_max, Rng& init_rng);

  int n_ports() const override { return static_cast<int>(ports_.size()); }
  void generate(Rng& rng, std::vector<Pair>& arrivals) override;

  double mean_idle(int input) const { return ports_[input].mean_off; }

 private:
  struct PortPhase {
    std::vector<double> dest_cdf;
    double load = 0.0;
    double mean_off = 0.0;
    long on_left = 0;
    long off_left = 0;
    int dest = 0;
  };
  long draw_off(const PortPhase& port, Rng& rng) const;
  int draw_dest(const PortPhase& port, Rng& rng) const;

  TruncatedPareto burst_;
  std::vector<PortPhase> ports_;
};

/// Every VOQ receives exactly one cell per slot. Used for saturation tests.
class SaturatedSource final : public TrafficSource {
 public:
  explicit SaturatedSource(int n) : n_(n) {}
  int n_ports() const override { return n_; }
  void generate(Rng&, std::vector<Pair>& arrivals) override;

 private:
  int n_;
};

/// No arrivals.
class SilentSource final : public TrafficSource {
 public:
  explicit SilentSource(int n) : n_(n) {}
  int n_ports() const override { return n_; }
  void generate(Rng&, std::vector<Pair>& arrivals) override { arrivals.clear(); }

 private:
  int n_;
};

}  // namespace disquo
