#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "disquo/schedule.hpp"
#include "disquo/traffic.hpp"

namespace testing_support {

// Coin values that always win / always lose against any p in (0, 1).
inline constexpr double kWin = 0.0;
inline const double kLose = std::nextafter(1.0, 0.0);

inline disquo::Permutation perm(const char* one_based) {
  std::vector<int> out;
  for (const char* c = one_based; *c; ++c) out.push_back(*c - '1');
  return disquo::Permutation(out);
}

/// Emits a fixed arrival list in given slots (counted by calls), nothing otherwise.
class ScriptedTraffic final : public disquo::TrafficSource {
 public:
  ScriptedTraffic(int n, std::map<int, std::vector<disquo::Pair>> by_call) : n_(n), script_(std::move(by_call)) {}
  int n_ports() const override { return n_; }
  void generate(disquo::Rng&, std::vector<disquo::Pair>& arrivals) override {
    arrivals.clear();
    if (auto it = script_.find(calls_); it != script_.end()) arrivals = it->second;
    ++calls_;
  }

 private:
  int n_;
  std::map<int, std::vector<disquo::Pair>> script_;
  int calls_ = 0;
};

}  // namespace testing_support
