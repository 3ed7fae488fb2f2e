#include "disquo/qmax_estimator.hpp"

#include <algorithm>
#include <stdexcept>

namespace disquo {

QmaxEstimator::QmaxEstimator(int n) : n_(n), last_(n > 0 ? n : 0, 0) {
  if (n < 1) throw std::invalid_argument("QmaxEstimator: n must be >= 1");
}

void QmaxEstimator::report(std::int64_t slot, std::int64_t local_max) {
  if (slot < 0 || local_max < 0) throw std::invalid_argument("QmaxEstimator: negative input");
  if (next_slot_ >= 0 && slot != next_slot_)
    throw std::logic_error("QmaxEstimator: reports must arrive once per consecutive slot");
  next_slot_ = slot + 1;
  const int card = static_cast<int>(slot % n_);
  last_[card] = local_max;
  if (reported_ < n_) ++reported_;
  estimate_ = *std::max_element(last_.begin(), last_.end());
}

std::int64_t qmax_estimate(QmaxEstimator& estimator, std::int64_t slot, std::int64_t local_max) {
  estimator.report(slot, local_max);
  return estimator.estimate();
}

}  // namespace disquo
