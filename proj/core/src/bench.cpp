#include "mlingam/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "mlingam/error.hpp"
#include "mlingam/random.hpp"

namespace mlingam {

namespace {

std::vector<std::size_t> split_sizes(std::size_t small_count, std::size_t small_n, std::size_t large_count,
                                     std::size_t large_n) {
  std::vector<std::size_t> sizes(small_count, small_n);
  sizes.insert(sizes.end(), large_count, large_n);
  return sizes;
}

std::vector<DatasetOutcome> failed_outcomes(std::size_t c) { return std::vector<DatasetOutcome>(c); }

}  // namespace

BenchConfig BenchConfig::from_preset(std::string_view name) {
  BenchConfig cfg;
  cfg.preset = std::string(name);
  if (name == "exp1") {
    cfg.spec.p = 10;
    cfg.spec.sample_sizes = split_sizes(5, 50, 5, 100);
    cfg.q = 10;
    cfg.trials = 100;
  } else if (name == "exp2") {
    cfg.spec.p = 40;
    cfg.spec.sample_sizes = split_sizes(5, 10, 5, 20);
    cfg.q = 5;
    cfg.trials = 100;
  } else if (name == "exp1-desk") {
    cfg.spec.p = 8;
    cfg.spec.sample_sizes = split_sizes(3, 50, 2, 100);
    cfg.q = 8;
    cfg.trials = 25;
  } else if (name == "exp2-desk") {
    cfg.spec.p = 20;
    cfg.spec.sample_sizes = split_sizes(3, 10, 2, 15);
    cfg.q = 3;
    cfg.trials = 25;
  } else if (name != "custom") {
    throw InvalidInput("unknown preset '" + std::string(name) + "'");
  }
  return cfg;
}

void BenchConfig::validate() const {
  spec.validate();
  kgv.validate();
  if (q < 1 || q > spec.p) throw InvalidInput("q must lie in [1, p]");
  if (trials < 1) throw InvalidInput("at least one trial is required");
}

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("MLINGAM_WORKERS")) {
    try {
      const long value = std::stol(env);
      if (value > 0) return static_cast<std::size_t>(value);
    } catch (const std::exception&) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

TrialRecord run_trial(const BenchConfig& config, std::size_t trial, const DistributionCatalog& catalog) {
  TrialRecord record;
  record.trial = trial;
  record.seed = derive_seed(config.spec.seed, trial);
  const std::size_t c = config.spec.num_groups();

  Simulation sim;
  try {
    SimSpec spec = config.spec;
    spec.seed = record.seed;
    sim = generate(spec, catalog);
  } catch (const std::exception& e) {
    record.error = std::string("generation failed: ") + e.what();
    return record;
  }
  const GroundTruth& truth = sim.truth;

  const auto score = [&](const EstimationResult& r, std::size_t result_group, std::size_t truth_group) {
    DatasetOutcome o;
    o.early_stopped = r.early_stopped;
    o.success = !r.early_stopped &&
                order_success(r.ordering, truth.groups[truth_group].b, truth.ordering, config.q, config.success_mode);
    o.squared_error = squared_error(r.b_matrices[result_group], truth.groups[truth_group].b);
    return o;
  };

  auto& joint = record.outcomes[static_cast<std::size_t>(Method::joint)];
  try {
    const EstimationResult r = estimate_joint(sim.data, config.q, GroupWeights::sample_size(sim.data), config.kgv);
    for (std::size_t g = 0; g < c; ++g) joint.push_back(score(r, g, g));
  } catch (const Error&) {
    joint = failed_outcomes(c);
  }

  auto& separate = record.outcomes[static_cast<std::size_t>(Method::separate)];
  const std::vector<EstimationResult> per_group = estimate_separate(sim.data, config.q, config.kgv);
  for (std::size_t g = 0; g < c; ++g) {
    separate.push_back(per_group[g].error ? DatasetOutcome{} : score(per_group[g], 0, g));
  }

  auto& naive = record.outcomes[static_cast<std::size_t>(Method::naive)];
  try {
    const EstimationResult r = estimate_naive(sim.data, config.q, config.kgv, config.naive_centering);
    for (std::size_t g = 0; g < c; ++g) naive.push_back(score(r, 0, g));
  } catch (const Error&) {
    naive = failed_outcomes(c);
  }
  return record;
}

BenchmarkReport run_benchmark(const BenchConfig& config, std::size_t workers, const DistributionCatalog& catalog,
                              bool record_timing) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  BenchmarkReport report;
  report.config = config;
  report.trials.resize(config.trials);

  const std::size_t threads = std::min(resolve_workers(workers), config.trials);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t t = next++; t < config.trials; t = next++) {
      try {
        report.trials[t] = run_trial(config, t, catalog);
      } catch (const std::exception& e) {
        report.trials[t] = TrialRecord{};
        report.trials[t].trial = t;
        report.trials[t].seed = derive_seed(config.spec.seed, t);
        report.trials[t].error = e.what();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(work);
  }

  report.summary = summarize(report.trials, config.spec.num_groups());
  if (record_timing) {
    report.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return report;
}

}  // namespace mlingam
