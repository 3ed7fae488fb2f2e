#include "disquo/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace disquo {

QmaxMode parse_qmax_mode(std::string_view s) {
  if (s == "exact") return QmaxMode::kExact;
  if (s == "broadcast-estimate") return QmaxMode::kBroadcastEstimate;
  if (s == "conjecture") return QmaxMode::kConjecture;
  throw std::invalid_argument("unknown qmax_mode: " + std::string(s));
}

std::string_view to_string(QmaxMode m) {
  switch (m) {
    case QmaxMode::kExact: return "exact";
    case QmaxMode::kBroadcastEstimate: return "broadcast-estimate";
    case QmaxMode::kConjecture: return "conjecture";
  }
  return "?";
}

GChoice parse_g_choice(std::string_view s) {
  if (s == "loglog") return GChoice::kLogLog;
  if (s == "unit") return GChoice::kUnit;
  throw std::invalid_argument("unknown g_choice: " + std::string(s));
}

std::string_view to_string(GChoice g) {
  return g == GChoice::kLogLog ? "loglog" : "unit";
}

WeightValues weight_functions(double x, GChoice choice) {
  if (!(x >= 0.0)) throw std::domain_error("weight functions need x >= 0");
  const double l = std::log1p(x);
  if (choice == GChoice::kUnit) return {l, 1.0, 1.0 / (1.0 + x)};
  const double inner = std::numbers::e + l;
  const double g = std::log(inner);
  const double g_prime = 1.0 / (inner * (1.0 + x));
  const double f_prime = 1.0 / ((1.0 + x) * g) - l * g_prime / (g * g);
  return {l / g, g, f_prime};
}

double weight_f(double x, GChoice g) { return weight_functions(x, g).f; }
double weight_f_prime(double x, GChoice g) { return weight_functions(x, g).f_prime; }

double weight_f_inverse(double y, GChoice g) {
  if (!(y >= 0.0)) throw std::domain_error("f^-1 needs y >= 0");
  if (y == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (weight_f(hi, g) < y) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi)) throw std::domain_error("f^-1: value out of range");
  }
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (weight_f(mid, g) < y) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

double effective_queue(double q, double q_max, double epsilon, int n, GChoice g) {
  if (q < 0.0 || q_max < 0.0) throw std::domain_error("effective_queue: negative queue");
  const double target = epsilon / (2.0 * n * n) * weight_f(q_max, g);
  return std::max(weight_f_inverse(target, g), q);
}

double activation_probability(double w) {
  if (w >= 0.0) return 1.0 / (1.0 + std::exp(-w));
  const double e = std::exp(w);
  return e / (1.0 + e);
}

WeightModel::WeightModel(const WeightConfig& config, int n) : config_(config), n_(n) {
  if (n < 1) throw std::invalid_argument("WeightModel: n must be >= 1");
  if (config.qmax_mode != QmaxMode::kConjecture && !(config.epsilon > 0.0 && config.epsilon < 1.0))
    throw std::invalid_argument("WeightModel: epsilon must lie in (0, 1)");
  if (config.qmax_mode == QmaxMode::kBroadcastEstimate) estimator_.emplace(n);
}

void WeightModel::begin_slot(const SwitchState& state) {
  switch (config_.qmax_mode) {
    case QmaxMode::kConjecture:
      return;
    case QmaxMode::kExact:
      qmax_ = static_cast<double>(state.max_queue());
      break;
    case QmaxMode::kBroadcastEstimate: {
      const int card = static_cast<int>(state.clock() % n_);
      estimator_->report(state.clock(), state.row_max_queue(card));
      qmax_ = static_cast<double>(estimator_->estimate());
      break;
    }
  }
  if (qmax_ != cached_qmax_) {
    cached_qmax_ = qmax_;
    floor_ = weight_f_inverse(config_.epsilon / (2.0 * n_ * n_) * weight_f(qmax_, config_.g_choice),
                              config_.g_choice);
  }
}

double WeightModel::weight(std::int64_t q) const {
  const double x = static_cast<double>(q);
  if (config_.qmax_mode == QmaxMode::kConjecture) return weight_f(x, config_.g_choice);
  return weight_f(std::max(floor_, x), config_.g_choice);
}

}  // namespace disquo
