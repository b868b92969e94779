#include <benchmark/benchmark.h>

#include "mlingam/distributions.hpp"
#include "mlingam/kgv.hpp"

namespace {

using namespace mlingam;

RowVector draw(Rng& rng, Eigen::Index n, std::string_view id) {
  const auto& dist = DistributionCatalog::builtin().find(id);
  RowVector r(n);
  for (Eigen::Index t = 0; t < n; ++t) r(t) = dist.sample(rng);
  return r.array() - r.mean();
}

void BM_KgvPairwise(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const RowVector u = draw(rng, n, "uniform");
  const RowVector v = draw(rng, n, "student_t5") + 0.5 * u;
  for (auto _ : state) benchmark::DoNotOptimize(kgv_pairwise(u, v, KgvParams{}));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KgvPairwise)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_IncompleteCholesky(benchmark::State& state) {
  Rng rng(2);
  const RowVector z = standardize(draw(rng, static_cast<Eigen::Index>(state.range(0)), "double_exponential"));
  for (auto _ : state) benchmark::DoNotOptimize(incomplete_cholesky(z, KgvParams{}).g.data());
}
BENCHMARK(BM_IncompleteCholesky)->RangeMultiplier(4)->Range(64, 4096);

}  // namespace
