#include <gtest/gtest.h>

#include <cstdlib>

#include "mlingam/bench.hpp"
#include "mlingam/error.hpp"
#include "mlingam/io.hpp"

using namespace mlingam;

namespace {

BenchConfig small_config() {
  BenchConfig cfg;
  cfg.spec.p = 4;
  cfg.spec.sample_sizes = {40, 60, 60};
  cfg.spec.seed = 17;
  cfg.q = 4;
  cfg.trials = 6;
  return cfg;
}

}  // namespace

TEST(Presets, MatchDocumentedShapes) {
  const BenchConfig e1 = BenchConfig::from_preset("exp1");
  EXPECT_EQ(e1.spec.p, 10u);
  EXPECT_EQ(e1.spec.sample_sizes, (std::vector<std::size_t>{50, 50, 50, 50, 50, 100, 100, 100, 100, 100}));
  EXPECT_EQ(e1.q, 10u);
  EXPECT_EQ(e1.trials, 100u);
  const BenchConfig e2 = BenchConfig::from_preset("exp2");
  EXPECT_EQ(e2.spec.p, 40u);
  EXPECT_EQ(e2.spec.sample_sizes, (std::vector<std::size_t>{10, 10, 10, 10, 10, 20, 20, 20, 20, 20}));
  EXPECT_EQ(e2.q, 5u);
  const BenchConfig d1 = BenchConfig::from_preset("exp1-desk");
  EXPECT_EQ(d1.spec.p, 8u);
  EXPECT_EQ(d1.spec.sample_sizes, (std::vector<std::size_t>{50, 50, 50, 100, 100}));
  EXPECT_EQ(d1.trials, 25u);
  const BenchConfig d2 = BenchConfig::from_preset("exp2-desk");
  EXPECT_EQ(d2.spec.p, 20u);
  EXPECT_EQ(d2.spec.sample_sizes, (std::vector<std::size_t>{10, 10, 10, 15, 15}));
  EXPECT_EQ(d2.q, 3u);
  EXPECT_THROW(BenchConfig::from_preset("exp3"), InvalidInput);
}

TEST(RunTrial, OutcomePerMethodAndGroup) {
  const BenchConfig cfg = small_config();
  const TrialRecord t = run_trial(cfg, 2);
  EXPECT_EQ(t.trial, 2u);
  EXPECT_EQ(t.seed, derive_seed(17, 2));
  for (const auto& per_method : t.outcomes) EXPECT_EQ(per_method.size(), 3u);
}

TEST(RunBenchmark, IndependentOfWorkerCount) {
  const BenchConfig cfg = small_config();
  const std::string one = io::dump(io::report_to_json(run_benchmark(cfg, 1)));
  const std::string three = io::dump(io::report_to_json(run_benchmark(cfg, 3)));
  const std::string again = io::dump(io::report_to_json(run_benchmark(cfg, 1)));
  EXPECT_EQ(one, three);
  EXPECT_EQ(one, again);
}

TEST(RunBenchmark, TrialSeedsDiffer) {
  const BenchmarkReport r = run_benchmark(small_config(), 1);
  ASSERT_EQ(r.trials.size(), 6u);
  EXPECT_NE(r.trials[0].seed, r.trials[1].seed);
  EXPECT_EQ(r.summary[Method::joint].datasets, 18u);
}

TEST(ResolveWorkers, ExplicitThenEnvironment) {
  EXPECT_EQ(resolve_workers(3), 3u);
  setenv("MLINGAM_WORKERS", "2", 1);
  EXPECT_EQ(resolve_workers(), 2u);
  unsetenv("MLINGAM_WORKERS");
  EXPECT_GE(resolve_workers(), 1u);
}

TEST(BenchConfig, Validation) {
  BenchConfig cfg = small_config();
  cfg.q = 5;
  EXPECT_THROW(cfg.validate(), InvalidInput);
  cfg = small_config();
  cfg.trials = 0;
  EXPECT_THROW(cfg.validate(), InvalidInput);
}
