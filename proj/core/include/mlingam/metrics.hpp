#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlingam/model.hpp"
#include "mlingam/regress.hpp"

namespace mlingam {

/// What counts as a correctly learned ordering.
enum class SuccessMode {
  /// Consistent with the true support (any valid causal ordering).
  support,
  /// Equal to the generating permutation (prefix of it when q < p).
  exact,
};

/// Scores an estimated ordering of length q against one group's true B.
/// A shorter ordering (early stop) is a failure; a longer one is InvalidInput.
bool order_success(const CausalOrdering& estimated, const ConnectionMatrix& true_b, const CausalOrdering& true_order,
                   std::size_t q, SuccessMode mode = SuccessMode::support);

/// Sum over every ordered pair (i, j), i != j, of the estimated block of
/// (b_hat_ij - b_ij)^2, divided by the number of estimated positions
/// q (q - 1) / 2. Unestimated upper entries count as 0. Zero when q < 2.
double squared_error(const EstimatedConnections& estimated, const ConnectionMatrix& true_b);

enum class Method : std::size_t { joint = 0, separate = 1, naive = 2 };
inline constexpr std::array<Method, 3> kMethods{Method::joint, Method::separate, Method::naive};
std::string_view method_name(Method m);

/// Outcome of one method on one dataset (one group of one trial).
struct DatasetOutcome {
  bool success = false;
  bool early_stopped = false;
  /// Absent when estimation failed outright.
  std::optional<double> squared_error;
};

struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  /// outcomes[method][group]
  std::array<std::vector<DatasetOutcome>, 3> outcomes;
  std::optional<std::string> error;
};

struct MethodSummary {
  Method method = Method::joint;
  std::size_t datasets = 0;
  std::size_t successes = 0;
  std::size_t early_stops = 0;
  std::size_t failed = 0;
  double success_percent = 0.0;
  double average_squared_error = 0.0;
};

struct BenchmarkSummary {
  std::array<MethodSummary, 3> methods;
  std::size_t trials = 0;
  std::size_t failed_trials = 0;

  const MethodSummary& operator[](Method m) const { return methods[static_cast<std::size_t>(m)]; }
};

/// Aggregates per-dataset outcomes. A trial that failed as a whole counts
/// `num_groups` failed datasets for every method. Throws InvalidInput when empty.
BenchmarkSummary summarize(std::span<const TrialRecord> trials, std::size_t num_groups);

}  // namespace mlingam
