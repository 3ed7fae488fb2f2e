#include "disquo/stats.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace disquo {

double student_t_975(int dof) {
  if (dof < 1) throw std::invalid_argument("student_t_975: dof must be >= 1");
  return boost::math::quantile(boost::math::students_t(dof), 0.975);
}

ConfidenceInterval mean_ci(std::span<const double> batch_means) {
  const int b = static_cast<int>(batch_means.size());
  if (b < 2) throw std::invalid_argument("mean_ci: need at least two batches");
  double mean = 0.0;
  for (double x : batch_means) mean += x;
  mean /= b;
  double ss = 0.0;
  for (double x : batch_means) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (b - 1) / b);
  return {mean, student_t_975(b - 1) * se, b};
}

ConfidenceInterval batch_means_ci(std::span<const double> series, int batches) {
  if (batches < 2) throw std::invalid_argument("batch_means_ci: need at least two batches");
  if (series.size() < 2 * static_cast<std::size_t>(batches))
    throw std::invalid_argument("batch_means_ci: series too short for the batch count");
  const std::size_t len = series.size() / batches;
  std::vector<double> means(batches, 0.0);
  for (int k = 0; k < batches; ++k) {
    double s = 0.0;
    for (std::size_t t = 0; t < len; ++t) s += series[k * len + t];
    means[k] = s / static_cast<double>(len);
  }
  return mean_ci(means);
}

StabilityVerdict stability_probe(std::span<const double> window_means, double window_slots, double threshold) {
  const int m = static_cast<int>(window_means.size());
  if (m < 10) throw std::invalid_argument("stability_probe: need at least 10 windows");
  if (!(window_slots > 0.0)) throw std::invalid_argument("stability_probe: window length must be positive");
  const double xbar = (m - 1) / 2.0;
  double ybar = 0.0;
  for (double y : window_means) ybar += y;
  ybar /= m;
  double sxx = 0.0, sxy = 0.0;
  for (int k = 0; k < m; ++k) {
    sxx += (k - xbar) * (k - xbar);
    sxy += (k - xbar) * (window_means[k] - ybar);
  }
  const double b = sxy / sxx;
  double sse = 0.0;
  for (int k = 0; k < m; ++k) {
    const double r = window_means[k] - ybar - b * (k - xbar);
    sse += r * r;
  }
  const double se = std::sqrt(sse / (m - 2) / sxx);
  StabilityVerdict v;
  v.slope = b / window_slots;
  if (se > 0.0) v.t_stat = b / se;
  else v.t_stat = b > 0.0 ? std::numeric_limits<double>::infinity() : (b < 0.0 ? -std::numeric_limits<double>::infinity() : 0.0);
  v.stable = !(v.slope > threshold && v.t_stat > 2.0);
  return v;
}

}  // namespace disquo
