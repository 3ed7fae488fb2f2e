#include "disquo/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace disquo {

TrafficPattern parse_pattern(std::string_view name) {
  if (name == "uniform") return TrafficPattern::kUniform;
  if (name == "lin-diagonal") return TrafficPattern::kLinDiagonal;
  if (name == "hot-spot") return TrafficPattern::kHotSpot;
  throw std::invalid_argument("unknown traffic pattern: " + std::string(name));
}

std::string_view to_string(TrafficPattern p) {
  switch (p) {
    case TrafficPattern::kUniform: return "uniform";
    case TrafficPattern::kLinDiagonal: return "lin-diagonal";
    case TrafficPattern::kHotSpot: return "hot-spot";
  }
  return "?";
}

RateMatrix make_rates(TrafficPattern pattern, int n, double sigma, std::optional<double> omega) {
  if (n < 1) throw std::invalid_argument("make_rates: n must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("make_rates: sigma must be positive");
  if (pattern == TrafficPattern::kHotSpot) {
    if (!omega) throw std::invalid_argument("make_rates: hot-spot requires omega");
    if (*omega < 0.0 || *omega > 1.0) throw std::invalid_argument("make_rates: omega must lie in [0, 1]");
  } else if (omega) {
    throw std::invalid_argument("make_rates: omega applies to hot-spot traffic only");
  }

  RateMatrix lambda(n, 0.0);
  switch (pattern) {
    case TrafficPattern::kUniform:
      lambda.fill(sigma / n);
      break;
    case TrafficPattern::kLinDiagonal: {
      const double denom = static_cast<double>(n) * (n + 1);
      for (int i = 0; i < n; ++i)
        for (int d = 0; d < n; ++d) lambda(i, (i + d) % n) = 2.0 * sigma * (n - d) / denom;
      break;
    }
    case TrafficPattern::kHotSpot:
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (n == 1) lambda(i, j) = sigma;
          else lambda(i, j) = (i == j) ? *omega * sigma : (1.0 - *omega) * sigma / (n - 1);
        }
      break;
  }
  return lambda;
}

Admissibility admissibility(const RateMatrix& lambda) {
  const int n = lambda.size();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < n; ++j) {
      if (lambda(i, j) < 0.0) throw std::invalid_argument("negative arrival rate");
      row += lambda(i, j);
      col += lambda(j, i);
    }
    worst = std::max({worst, row, col});
  }
  Admissibility a;
  a.max_load = worst;
  a.admissible = worst < 1.0;
  a.epsilon = a.admissible ? 1.0 - worst : 0.0;
  return a;
}

Matrix<std::uint8_t> bernoulli_arrivals(const RateMatrix& lambda, Rng& rng) {
  const int n = lambda.size();
  Matrix<std::uint8_t> a(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.uniform() < lambda(i, j) ? 1 : 0;
  return a;
}

TruncatedPareto::TruncatedPareto(double alpha, int l_max) : alpha_(alpha) {
  if (!(alpha > 1.0)) throw std::invalid_argument("Pareto exponent must exceed 1");
  if (l_max < 1) throw std::invalid_argument("l_max must be >= 1");
  cdf_.resize(l_max);
  double norm = 0.0;
  for (int l = 1; l <= l_max; ++l) norm += std::pow(static_cast<double>(l), -alpha);
  double acc = 0.0;
  for (int l = 1; l <= l_max; ++l) {
    const double p = std::pow(static_cast<double>(l), -alpha) / norm;
    acc += p;
    mean_ += l * p;
    cdf_[l - 1] = acc;
  }
  cdf_.back() = 1.0;
}

int TruncatedPareto::sample(UniformSource& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return static_cast<int>(it - cdf_.begin()) + 1;
}

double TruncatedPareto::probability(int l) const {
  if (l < 1 || l > l_max()) return 0.0;
  return l == 1 ? cdf_[0] : cdf_[l - 1] - cdf_[l - 2];
}

int pareto_burst(double alpha, int l_max, UniformSource& rng) {
  return TruncatedPareto(alpha, l_max).sample(rng);
}

double exact_burst_mean(double alpha, int l_max) {
  if (!(alpha > 1.0) || l_max < 1) throw std::invalid_argument("invalid Pareto parameters");
  double norm = 0.0, first = 0.0;
  for (int l = 1; l <= l_max; ++l) {
    norm += std::pow(static_cast<double>(l), -alpha);
    first += std::pow(static_cast<double>(l), 1.0 - alpha);
  }
  return first / norm;
}

std::int64_t BernoulliSource::draw_gap(double p, Rng& rng) {
  // Failures before the next success of a Bernoulli(p) sequence.
  if (p >= 1.0) return 0;
  if (p <= 0.0) return std::numeric_limits<std::int64_t>::max();
  const double u = 1.0 - rng.uniform();  // (0, 1]
  const double g = std::floor(std::log(u) / std::log1p(-p));
  return g >= 9.0e18 ? std::numeric_limits<std::int64_t>::max() : static_cast<std::int64_t>(g);
}

void BernoulliSource::generate(Rng& rng, std::vector<Pair>& arrivals) {
  arrivals.clear();
  const int n = lambda_.size();
  if (wait_.empty()) {
    wait_.resize(static_cast<std::size_t>(n) * n);
    for (int k = 0; k < n * n; ++k) wait_[k] = draw_gap(lambda_.flat()[k], rng);
  }
  for (int k = 0; k < n * n; ++k) {
    std::int64_t& w = wait_[k];
    if (w == 0) {
      arrivals.emplace_back(k / n, k % n);
      w = draw_gap(lambda_.flat()[k], rng);
    } else if (w != std::numeric_limits<std::int64_t>::max()) {
      --w;
    }
  }
}

BurstySource::BurstySource(const RateMatrix& lambda, double alpha, int l_max, Rng& init_rng)
    : burst_(alpha, l_max) {
  const int n = lambda.size();
  ports_.resize(n);
  for (int i = 0; i < n; ++i) {
    PortPhase& port = ports_[i];
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += lambda(i, j);
    port.load = acc;
    port.dest_cdf.resize(n);
    double run = 0.0;
    for (int j = 0; j < n; ++j) {
      run += acc > 0.0 ? lambda(i, j) / acc : 0.0;
      port.dest_cdf[j] = run;
    }
    if (acc > 0.0) port.dest_cdf.back() = 1.0;
    port.mean_off = acc >= 1.0 ? 0.0 : (acc > 0.0 ? burst_.mean() * (1.0 - acc) / acc : 0.0);
    if (acc > 0.0) port.off_left = draw_off(port, init_rng);
  }
}

long BurstySource::draw_off(const PortPhase& port, Rng& rng) const {
  if (port.mean_off <= 0.0) return 0;
  // Geometric on {0, 1, ...} with mean m: continuation probability m / (1 + m).
  const double q = port.mean_off / (1.0 + port.mean_off);
  const double u = rng.uniform();
  return static_cast<long>(std::floor(std::log1p(-u) / std::log(q)));
}

int BurstySource::draw_dest(const PortPhase& port, Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(port.dest_cdf.begin(), port.dest_cdf.end(), u);
  return std::min(static_cast<int>(it - port.dest_cdf.begin()),
                  static_cast<int>(port.dest_cdf.size()) - 1);
}

void BurstySource::generate(Rng& rng, std::vector<Pair>& arrivals) {
  arrivals.clear();
  for (int i = 0; i < static_cast<int>(ports_.size()); ++i) {
    PortPhase& port = ports_[i];
    if (port.load <= 0.0) continue;
    if (port.on_left == 0 && port.off_left == 0) {
      port.on_left = burst_.sample(rng);
      port.dest = draw_dest(port, rng);
    }
    if (port.on_left > 0) {
      arrivals.emplace_back(i, port.dest);
      if (--port.on_left == 0) port.off_left = draw_off(port, rng);
    } else {
      --port.off_left;
    }
  }
}

void SaturatedSource::generate(Rng&, std::vector<Pair>& arrivals) {
  arrivals.clear();
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) arrivals.emplace_back(i, j);
}

}  // namespace disquo
