#include "mlingam/metrics.hpp"

#include <string>

#include "mlingam/error.hpp"

namespace mlingam {

bool order_success(const CausalOrdering& estimated, const ConnectionMatrix& true_b, const CausalOrdering& true_order,
                   std::size_t q, SuccessMode mode) {
  const std::size_t p = true_b.size();
  if (estimated.num_variables() != p || true_order.num_variables() != p) {
    throw InvalidInput("ordering and true matrix disagree on the number of variables");
  }
  if (q < 1 || q > p) throw InvalidInput("q out of range");
  if (estimated.size() > q) {
    throw InvalidInput("estimated ordering has " + std::to_string(estimated.size()) + " entries, expected " +
                       std::to_string(q));
  }
  if (estimated.size() < q) return false;

  if (mode == SuccessMode::exact) {
    for (std::size_t t = 0; t < q; ++t) {
      if (estimated[t] != true_order[t]) return false;
    }
    return true;
  }
  return q == p ? is_consistent_with_ordering(true_b, estimated) : is_prefix_consistent(true_b, estimated);
}

double squared_error(const EstimatedConnections& estimated, const ConnectionMatrix& true_b) {
  const std::size_t q = estimated.block.size();
  if (estimated.b.rows() != true_b.b.rows()) throw InvalidInput("estimated and true matrices differ in size");
  if (q < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t c = 0; c < q; ++c) {
      if (a == c) continue;
      const auto i = static_cast<Eigen::Index>(estimated.block[a]);
      const auto j = static_cast<Eigen::Index>(estimated.block[c]);
      const double diff = estimated.b(i, j) - true_b.b(i, j);
      sum += diff * diff;
    }
  }
  return sum / static_cast<double>(q * (q - 1) / 2);
}

std::string_view method_name(Method m) {
  switch (m) {
    case Method::joint:
      return "joint";
    case Method::separate:
      return "separate";
    case Method::naive:
      return "naive";
  }
  return "unknown";
}

BenchmarkSummary summarize(std::span<const TrialRecord> trials, std::size_t num_groups) {
  if (trials.empty()) throw InvalidInput("cannot summarize zero trials");
  BenchmarkSummary summary;
  summary.trials = trials.size();
  std::array<double, 3> se_sum{};
  std::array<std::size_t, 3> se_count{};
  for (Method m : kMethods) summary.methods[static_cast<std::size_t>(m)].method = m;

  for (const auto& trial : trials) {
    if (trial.error) ++summary.failed_trials;
    for (std::size_t k = 0; k < 3; ++k) {
      auto& s = summary.methods[k];
      if (trial.error) {
        s.datasets += num_groups;
        s.failed += num_groups;
        continue;
      }
      for (const auto& outcome : trial.outcomes[k]) {
        ++s.datasets;
        if (outcome.success) ++s.successes;
        if (outcome.early_stopped) ++s.early_stops;
        if (outcome.squared_error) {
          se_sum[k] += *outcome.squared_error;
          ++se_count[k];
        } else {
          ++s.failed;
        }
      }
    }
  }
  for (std::size_t k = 0; k < 3; ++k) {
    auto& s = summary.methods[k];
    s.success_percent = s.datasets == 0 ? 0.0 : 100.0 * static_cast<double>(s.successes) / static_cast<double>(s.datasets);
    s.average_squared_error = se_count[k] == 0 ? 0.0 : se_sum[k] / static_cast<double>(se_count[k]);
  }
  return summary;
}

}  // namespace mlingam
