// mlingam: joint estimation of multiple LiNGAMs sharing a causal ordering.
//
//   mlingam estimate --inputs g1.csv g2.csv --out result.json
//   mlingam simulate --p 10 --c 10 --n 50x5,100x5 --seed 1 --out-dir data/
//   mlingam bench --preset exp1 --trials 100 --seed 1 --out report.json --plot-data plot.csv

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlingam/bench.hpp"
#include "mlingam/discover.hpp"
#include "mlingam/error.hpp"
#include "mlingam/io.hpp"
#include "mlingam/simgen.hpp"

namespace fs = std::filesystem;
using namespace mlingam;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;

struct KgvFlags {
  std::optional<double> sigma, kappa, eta;
  std::optional<std::size_t> max_rank;

  void attach(CLI::App* app) {
    app->add_option("--sigma", sigma, "Gaussian kernel width on standardized data (default 1)");
    app->add_option("--kappa", kappa, "KGV regularizer (default 2e-2 for n <= 1000, else 2e-3)");
    app->add_option("--eta", eta, "Incomplete Cholesky relative trace tolerance (default 1e-5)");
    app->add_option("--max-rank", max_rank, "Low-rank factor cap (default min(n, 100))");
  }

  KgvParams resolve() const {
    KgvParams p;
    if (sigma) p.sigma = *sigma;
    p.kappa = kappa;
    if (eta) p.eta = *eta;
    p.max_rank = max_rank;
    p.validate();
    return p;
  }
};

/// "50,50,100" or "50x3,100x2".
std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const std::size_t x = item.find('x');
    try {
      std::size_t used = 0;
      const auto n = std::stoul(item.substr(0, x), &used);
      std::size_t repeat = 1;
      if (x != std::string::npos) repeat = std::stoul(item.substr(x + 1));
      if (used != item.substr(0, x).size()) throw std::invalid_argument(item);
      sizes.insert(sizes.end(), repeat, n);
    } catch (const std::exception&) {
      throw InvalidInput("bad sample-size item '" + item + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return sizes;
}

std::vector<std::size_t> resolve_sizes(const std::string& text, std::optional<std::size_t> c) {
  std::vector<std::size_t> sizes = parse_sizes(text);
  if (c) {
    if (sizes.size() == 1) sizes.assign(*c, sizes.front());
    if (sizes.size() != *c) {
      throw InvalidInput("--n lists " + std::to_string(sizes.size()) + " sample sizes but --c is " + std::to_string(*c));
    }
  }
  return sizes;
}

std::optional<double> parse_sparsity(const std::string& text) {
  if (text.empty() || text == "auto") return std::nullopt;
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw InvalidInput("--s must be 'auto' or a number, got '" + text + "'");
  }
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
  std::vector<std::string> inputs;
  std::optional<std::size_t> q;
  std::string weights = "sample-size";
  KgvFlags kgv;
  std::string out;
};

int run_estimate(const EstimateArgs& args) {
  std::vector<io::CsvTable> tables;
  for (const auto& path : args.inputs) tables.push_back(io::read_csv(path));
  for (std::size_t g = 1; g < tables.size(); ++g) {
    if (tables[g].headers != tables[0].headers) {
      throw InvalidInput(args.inputs[g] + ": column headers differ from " + args.inputs[0]);
    }
  }
  const auto& names = tables[0].headers;
  const std::size_t p = names.size();

  MultiGroupData groups;
  io::EstimateRecord record;
  record.inputs = args.inputs;
  record.variables = names;
  for (std::size_t g = 0; g < tables.size(); ++g) {
    record.sample_sizes.push_back(static_cast<std::size_t>(tables[g].data.cols()));
    groups.emplace_back(std::move(tables[g].data), g);
  }

  record.q = args.q.value_or(p);
  record.kgv = args.kgv.resolve();
  record.weights_mode = args.weights;
  if (args.weights == "sample-size") {
    record.weights = GroupWeights::sample_size(groups);
  } else if (args.weights == "uniform") {
    record.weights = GroupWeights::uniform(groups.size());
  } else {
    record.weights_mode = "explicit";
    std::stringstream ss(args.weights);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        record.weights.w.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw InvalidInput("bad weight '" + item + "'");
      }
    }
  }

  const EstimationResult result = estimate_joint(groups, record.q, record.weights, record.kgv);
  io::write_text(args.out, io::dump(io::estimation_to_json(result, record)));
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  return result.early_stopped ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SpecFlags {
  std::optional<std::size_t> p, c;
  std::string n;
  std::string s = "auto";
  std::optional<double> coef_lo, coef_hi, var_lo, var_hi, mean_variance;
  bool share_distributions = false;
  std::string structure = "independent";
  std::string catalog;

  void attach(CLI::App* app) {
    app->add_option("--p", p, "Number of variables");
    app->add_option("--c", c, "Number of groups");
    app->add_option("--n", n, "Sample sizes: n1,...,nc or NxK repeats, e.g. 50x5,100x5");
    app->add_option("--s", s, "Edge probability, or 'auto' for p / (2 (p - 1))");
    app->add_option("--coef-lo", coef_lo, "Smallest coefficient magnitude (default 0.5)");
    app->add_option("--coef-hi", coef_hi, "Largest coefficient magnitude (default 1.5)");
    app->add_option("--var-lo", var_lo, "Smallest external influence variance (default 1)");
    app->add_option("--var-hi", var_hi, "Largest external influence variance (default 3)");
    app->add_option("--mean-variance", mean_variance, "Variance of the added Gaussian means (default 4)");
    app->add_flag("--share-distributions", share_distributions,
                  "Use one influence distribution per variable across all groups");
    app->add_option("--structure", structure,
                    "What groups share besides the ordering: independent | support | full");
    app->add_option("--catalog", catalog, "Distribution catalog JSON (default: built-in)");
  }

  void apply(SimSpec& spec) const {
    if (p) spec.p = *p;
    if (!n.empty()) {
      spec.sample_sizes = resolve_sizes(n, c);
    } else if (c && spec.sample_sizes.size() != *c) {
      throw InvalidInput("--c given without --n");
    }
    if (s != "auto") spec.sparsity = parse_sparsity(s);
    if (coef_lo) spec.coef_lo = *coef_lo;
    if (coef_hi) spec.coef_hi = *coef_hi;
    if (var_lo) spec.variance_lo = *var_lo;
    if (var_hi) spec.variance_hi = *var_hi;
    if (mean_variance) spec.mean_variance = *mean_variance;
    spec.share_distributions = spec.share_distributions || share_distributions;
    if (structure == "independent") {
      spec.structure_sharing = StructureSharing::independent;
    } else if (structure == "support") {
      spec.structure_sharing = StructureSharing::support;
    } else if (structure == "full") {
      spec.structure_sharing = StructureSharing::full;
    } else {
      throw InvalidInput("--structure must be 'independent', 'support' or 'full'");
    }
  }

  DistributionCatalog load_catalog() const {
    return catalog.empty() ? DistributionCatalog::builtin() : DistributionCatalog::from_file(catalog);
  }
};

struct SimulateArgs {
  SpecFlags spec;
  std::uint64_t seed = 0;
  std::string out_dir;
};

int run_simulate(const SimulateArgs& args) {
  SimSpec spec;
  args.spec.apply(spec);
  if (!args.spec.p) throw InvalidInput("--p is required");
  if (args.spec.n.empty()) throw InvalidInput("--n is required");
  spec.seed = args.seed;
  const DistributionCatalog catalog = args.spec.load_catalog();
  const Simulation sim = generate(spec, catalog);

  const fs::path dir(args.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidInput("cannot create '" + dir.string() + "': " + ec.message());
  const auto names = io::default_variable_names(spec.p);
  const int width = static_cast<int>(std::to_string(spec.num_groups()).size());
  for (std::size_t g = 0; g < sim.data.size(); ++g) {
    std::string index = std::to_string(g + 1);
    index.insert(0, static_cast<std::size_t>(std::max(0, width - static_cast<int>(index.size()))), '0');
    io::write_csv(dir / ("group_" + index + ".csv"), names, sim.data[g].data());
  }
  io::write_text(dir / "ground_truth.json", io::dump(io::ground_truth_to_json(sim.truth, spec, names)));
  return kExitOk;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
  std::string preset = "exp1";
  SpecFlags spec;
  std::optional<std::size_t> q, trials;
  std::uint64_t seed = 0;
  KgvFlags kgv;
  std::string success_mode = "support";
  std::string naive_centering = "global";
  std::size_t workers = 0;
  bool timing = false;
  std::string out;
  std::string plot_data;
};

int run_bench(const BenchArgs& args) {
  BenchConfig cfg = BenchConfig::from_preset(args.preset);
  args.spec.apply(cfg.spec);
  cfg.spec.seed = args.seed;
  if (args.q) cfg.q = *args.q;
  if (args.preset == "custom" && !args.q) cfg.q = cfg.spec.p;
  if (args.trials) cfg.trials = *args.trials;
  cfg.kgv = args.kgv.resolve();
  if (args.success_mode == "exact") {
    cfg.success_mode = SuccessMode::exact;
  } else if (args.success_mode != "support") {
    throw InvalidInput("--success-mode must be 'support' or 'exact'");
  }
  if (args.naive_centering == "per-group") {
    cfg.naive_centering = PooledCentering::per_group;
  } else if (args.naive_centering != "global") {
    throw InvalidInput("--naive-centering must be 'global' or 'per-group'");
  }

  const DistributionCatalog catalog = args.spec.load_catalog();
  const BenchmarkReport report = run_benchmark(cfg, args.workers, catalog, args.timing);
  io::write_text(args.out, io::dump(io::report_to_json(report)));
  if (!args.plot_data.empty()) io::write_text(args.plot_data, io::format_plot_data(report));

  for (Method m : kMethods) {
    const auto& s = report.summary[m];
    std::cerr << method_name(m) << ": " << s.successes << "/" << s.datasets << " orderings correct ("
              << s.success_percent << "%), average squared error " << s.average_squared_error << "\n";
  }
  return report.summary.failed_trials == report.summary.trials ? kExitError : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint estimation of multiple linear non-Gaussian acyclic models sharing a causal ordering"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate a shared causal ordering from per-group CSV files");
  estimate->add_option("--inputs", est.inputs, "One CSV per group (header row, one sample per row)")
      ->required()
      ->expected(1, -1);
  estimate->add_option("--q", est.q, "Number of causal orders to estimate (default p)");
  estimate->add_option("--weights", est.weights, "sample-size | uniform | w1,w2,...");
  est.kgv.attach(estimate);
  estimate->add_option("--out", est.out, "Result JSON path")->required();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Write synthetic multi-group data and its ground truth");
  sim.spec.attach(simulate);
  simulate->add_option("--seed", sim.seed, "Random seed")->required();
  simulate->add_option("--out-dir", sim.out_dir, "Output directory")->required();

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Compare joint, separate and naive estimation on synthetic data");
  bench_cmd->add_option("--preset", bench.preset, "exp1 | exp2 | exp1-desk | exp2-desk | custom");
  bench.spec.attach(bench_cmd);
  bench_cmd->add_option("--q", bench.q, "Number of causal orders to estimate");
  bench_cmd->add_option("--trials", bench.trials, "Number of trials");
  bench_cmd->add_option("--seed", bench.seed, "Base random seed")->required();
  bench.kgv.attach(bench_cmd);
  bench_cmd->add_option("--success-mode", bench.success_mode, "support (any valid ordering) | exact");
  bench_cmd->add_option("--naive-centering", bench.naive_centering, "global | per-group");
  bench_cmd->add_option("--workers", bench.workers, "Worker threads (default $MLINGAM_WORKERS or all cores)");
  bench_cmd->add_flag("--timing", bench.timing, "Record wall-clock time in the report");
  bench_cmd->add_option("--out", bench.out, "Report JSON path")->required();
  bench_cmd->add_option("--plot-data", bench.plot_data, "Tidy CSV of (method, metric, value)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (estimate->parsed()) return run_estimate(est);
    if (simulate->parsed()) return run_simulate(sim);
    if (bench_cmd->parsed()) return run_bench(bench);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
