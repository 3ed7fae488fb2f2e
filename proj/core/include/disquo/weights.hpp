#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "disquo/qmax_estimator.hpp"
#include "disquo/switch_state.hpp"

namespace disquo {

enum class QmaxMode {
  kExact,              // true Q_max every slot
  kBroadcastEstimate,  // one linecard reports its row maximum per slot
  kConjecture,         // W = f(Q) directly, Q_max unused
};

enum class GChoice {
  kLogLog,  // g(x) = log(e + log(1 + x))
  kUnit,    // g(x) = 1, so f(x) = log(1 + x)
};

QmaxMode parse_qmax_mode(std::string_view s);
std::string_view to_string(QmaxMode m);
GChoice parse_g_choice(std::string_view s);
std::string_view to_string(GChoice g);

struct WeightConfig {
  double epsilon = 0.05;
  QmaxMode qmax_mode = QmaxMode::kConjecture;
  GChoice g_choice = GChoice::kLogLog;
};

struct WeightValues {
  double f;
  double g;
  double f_prime;
};

// Throws std::domain_error for negative x.
WeightValues weight_functions(double x, GChoice g = GChoice::kLogLog);
double weight_f(double x, GChoice g = GChoice::kLogLog);
double weight_f_prime(double x, GChoice g = GChoice::kLogLog);

// Inverse of f on [0, inf): bisection inside a doubling bracket, relative tolerance 1e-10.
double weight_f_inverse(double y, GChoice g = GChoice::kLogLog);

// Q~ = max{ f^-1( eps / (2 N^2) * f(q_max) ), q }.
double effective_queue(double q, double q_max, double epsilon, int n, GChoice g = GChoice::kLogLog);

// e^W / (1 + e^W) without overflow.
double activation_probability(double w);

/// Per-slot weights W_ij = f(Q~_ij). begin_slot() refreshes whatever global
/// quantity the mode needs; weight()/probability() are then pure in q.
class WeightModel {
 public:
  WeightModel(const WeightConfig& config, int n);

  void begin_slot(const SwitchState& state);

  double weight(std::int64_t q) const;
  double probability(std::int64_t q) const { return activation_probability(weight(q)); }

  const WeightConfig& config() const { return config_; }
  // Q_max value used for the current slot (0 in conjecture mode).
  double qmax_used() const { return qmax_; }
  // The Q~ floor f^-1(eps / (2 N^2) f(Q_max)) for the current slot.
  double floor() const { return floor_; }
  const QmaxEstimator* estimator() const { return estimator_ ? &*estimator_ : nullptr; }

 private:
  WeightConfig config_;
  int n_;
  double qmax_ = 0.0;
  double floor_ = 0.0;
  double cached_qmax_ = -1.0;
  std::optional<QmaxEstimator> estimator_;
};

}  // namespace disquo
