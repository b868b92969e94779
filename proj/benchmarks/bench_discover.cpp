#include <benchmark/benchmark.h>

#include "mlingam/discover.hpp"
#include "mlingam/simgen.hpp"

namespace {

using namespace mlingam;

Simulation make_data(std::size_t p, std::size_t groups, std::size_t n) {
  SimSpec spec;
  spec.p = p;
  spec.sample_sizes.assign(groups, n);
  spec.seed = 42;
  return generate(spec);
}

void BM_EstimateJoint(benchmark::State& state) {
  const auto p = static_cast<std::size_t>(state.range(0));
  const Simulation sim = make_data(p, 5, 100);
  const GroupWeights w = GroupWeights::sample_size(sim.data);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_joint(sim.data, p, w, KgvParams{}).ordering.size());
}
BENCHMARK(BM_EstimateJoint)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_EstimateJointPrefix(benchmark::State& state) {
  const Simulation sim = make_data(40, 10, 20);
  const GroupWeights w = GroupWeights::sample_size(sim.data);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_joint(sim.data, 5, w, KgvParams{}).ordering.size());
}
BENCHMARK(BM_EstimateJointPrefix)->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state) {
  SimSpec spec;
  spec.p = 10;
  spec.sample_sizes.assign(10, 100);
  for (auto _ : state) {
    ++spec.seed;
    benchmark::DoNotOptimize(generate(spec).data.size());
  }
}
BENCHMARK(BM_Generate)->Unit(benchmark::kMicrosecond);

}  // namespace
