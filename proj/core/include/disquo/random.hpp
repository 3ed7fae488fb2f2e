#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace disquo {

/// Source of uniform draws on [0, 1). Schedulers take coins through this
/// interface so tests can script the exact values.
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  virtual double uniform() = 0;
};

/// 64-bit Mersenne Twister with a platform-independent mapping to doubles.
class Rng final : public UniformSource {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  double uniform() override {
    // 53 high bits -> [0, 1); identical on every standard library.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n), n > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Replays a fixed list of uniforms; throws once exhausted.
class ScriptedUniforms final : public UniformSource {
 public:
  explicit ScriptedUniforms(std::vector<double> values) : values_(std::move(values)) {}
  double uniform() override;
  std::size_t consumed() const { return next_; }

 private:
  std::vector<double> values_;
  std::size_t next_ = 0;
};

/// SplitMix64 finalizer (Steele, Lea & Flood 2014).
std::uint64_t splitmix64(std::uint64_t x);

/// Child seed for stream `index` of a run seeded with `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace disquo
