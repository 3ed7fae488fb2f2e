#pragma once

#include <cstdint>
#include <vector>

namespace disquo {

/// Q_max as seen through a round-robin broadcast: in slot s linecard s mod N
/// announces its local maximum, every port keeps the latest announcement
/// from each linecard and takes the maximum.
class QmaxEstimator {
 public:
  explicit QmaxEstimator(int n);

  // Records the report of linecard slot mod N. Throws if slots are skipped
  // or repeated.
  void report(std::int64_t slot, std::int64_t local_max);

  std::int64_t estimate() const { return estimate_; }
  bool warming_up() const { return reported_ < n_; }
  int n() const { return n_; }

 private:
  int n_;
  std::vector<std::int64_t> last_;
  std::int64_t next_slot_ = -1;
  int reported_ = 0;  // distinct linecards heard from, saturates at n
  std::int64_t estimate_ = 0;
};

std::int64_t qmax_estimate(QmaxEstimator& estimator, std::int64_t slot,
                           std::int64_t local_max);

}  // namespace disquo
