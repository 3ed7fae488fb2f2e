#include <benchmark/benchmark.h>

#include <memory>

#include "disquo/baselines.hpp"
#include "disquo/basic_update.hpp"
#include "disquo/chain.hpp"
#include "disquo/distributed.hpp"
#include "disquo/mwm.hpp"
#include "disquo/slot_engine.hpp"
#include "disquo/switch_state.hpp"
#include "disquo/traffic.hpp"

using namespace disquo;

namespace {

template <class MakeSched>
void run_slots(benchmark::State& st, MakeSched make) {
  const int n = static_cast<int>(st.range(0));
  Rng coins(7), rng(11);
  auto sched = make(n, coins);
  SwitchState s(n, 1);
  BernoulliSource traffic(make_rates(TrafficPattern::kUniform, n, 0.9, std::nullopt));
  for (auto _ : st) step_slot(s, *sched, traffic, rng);
  st.SetItemsProcessed(st.iterations());
}

void BM_SlotDistributed(benchmark::State& st) {
  run_slots(st, [](int n, Rng& c) {
    return std::make_unique<DistributedDisquo>(n, WeightConfig{}, PermutationStream(n, HMode::kHamiltonian), c);
  });
}
BENCHMARK(BM_SlotDistributed)->Arg(4)->Arg(16)->Arg(32);

void BM_SlotCentral(benchmark::State& st) {
  run_slots(st, [](int n, Rng& c) {
    return std::make_unique<CentralDisquo>(n, WeightConfig{}, PermutationStream(n, HMode::kHamiltonian), c);
  });
}
BENCHMARK(BM_SlotCentral)->Arg(4)->Arg(16)->Arg(32);

void BM_SlotMwm(benchmark::State& st) {
  run_slots(st, [](int n, Rng&) { return std::make_unique<MwmScheduler>(n); });
}
BENCHMARK(BM_SlotMwm)->Arg(4)->Arg(16)->Arg(32);

void BM_BasicUpdate(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  Rng rng(3);
  Matrix<double> w(n, 0.0);
  for (auto& v : w.flat()) v = 2.0 * rng.uniform();
  PermutationStream h(n, HMode::kSharedRandom, 5);
  DisquoSchedule x(n);
  for (auto _ : st) {
    x = basic_update(x, h.advance(), w, rng);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_BasicUpdate)->Arg(4)->Arg(16)->Arg(64);

void BM_Mwm(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  Rng rng(9);
  Matrix<double> w(n, 0.0);
  for (auto& v : w.flat()) v = rng.uniform();
  for (auto _ : st) benchmark::DoNotOptimize(mwm(w));
}
BENCHMARK(BM_Mwm)->Arg(4)->Arg(16)->Arg(32);

void BM_TransitionMatrix(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  Rng rng(13);
  Matrix<double> w(n, 0.0);
  for (auto& v : w.flat()) v = rng.uniform();
  for (auto _ : st) benchmark::DoNotOptimize(transition_matrix(w, n));
}
BENCHMARK(BM_TransitionMatrix)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
