#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mlingam/discover.hpp"
#include "mlingam/distributions.hpp"
#include "mlingam/kgv.hpp"
#include "mlingam/metrics.hpp"
#include "mlingam/simgen.hpp"

namespace mlingam {

struct BenchConfig {
  std::string preset = "custom";
  /// spec.seed is the base seed; trial t uses derive_seed(spec.seed, t).
  SimSpec spec;
  std::size_t q = 0;
  std::size_t trials = 1;
  KgvParams kgv;
  SuccessMode success_mode = SuccessMode::support;
  PooledCentering naive_centering = PooledCentering::global;

  /// exp1: p=10, c=10, n=50x5,100x5, q=p, 100 trials.
  /// exp2: p=40, c=10, n=10x5,20x5, q=5, 100 trials.
  /// exp1-desk: p=8, c=5, n=50x3,100x2, q=p, 25 trials.
  /// exp2-desk: p=20, c=5, n=10x3,15x2, q=3, 25 trials.
  static BenchConfig from_preset(std::string_view name);

  void validate() const;
};

struct BenchmarkReport {
  BenchConfig config;
  BenchmarkSummary summary;
  std::vector<TrialRecord> trials;
  /// Only filled when timing was requested; kept out of reproducible output otherwise.
  std::optional<double> wall_clock_seconds;
};

/// Worker count: `requested` if nonzero, else $MLINGAM_WORKERS, else the
/// hardware concurrency (at least 1).
std::size_t resolve_workers(std::size_t requested = 0);

/// Generates one trial and scores the joint, separate and naive estimators.
TrialRecord run_trial(const BenchConfig& config, std::size_t trial,
                      const DistributionCatalog& catalog = DistributionCatalog::builtin());

/// Runs every trial on `workers` threads. The report does not depend on the
/// worker count.
BenchmarkReport run_benchmark(const BenchConfig& config, std::size_t workers = 0,
                              const DistributionCatalog& catalog = DistributionCatalog::builtin(),
                              bool record_timing = false);

}  // namespace mlingam
