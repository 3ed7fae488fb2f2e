#pragma once

#include <span>

namespace disquo {

struct ConfidenceInterval {
  double mean = 0.0;
  double half_width = 0.0;  // 95 %, Student t
  int batches = 0;
};

/// Splits the series into `batches` equal consecutive batches (the tail
/// remainder is dropped) and returns mean of batch means +- t * stderr.
ConfidenceInterval batch_means_ci(std::span<const double> series, int batches);

/// Same, for batch means that were already formed.
ConfidenceInterval mean_ci(std::span<const double> batch_means);

double student_t_975(int dof);

struct StabilityVerdict {
  bool stable = true;
  double slope = 0.0;   // cells per slot
  double t_stat = 0.0;  // slope / its standard error
};

/// Least-squares trend of window means against window index. Unstable iff
/// the slope, converted to cells per slot, exceeds `threshold` and the trend
/// is significant (t > 2). Needs at least 10 windows.
StabilityVerdict stability_probe(std::span<const double> window_means, double window_slots = 1.0,
                                 double threshold = 0.01);

}  // namespace disquo
