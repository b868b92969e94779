#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlingam/kgv.hpp"
#include "mlingam/model.hpp"
#include "mlingam/regress.hpp"

namespace mlingam {

/// Nonnegative per-group weights of the joint independence score.
struct GroupWeights {
  std::vector<double> w;

  /// w_g = n_g, the default.
  static GroupWeights sample_size(std::span<const GroupDataset> groups);
  static GroupWeights uniform(std::size_t num_groups);

  /// Throws InvalidInput unless there is one weight per group, all are
  /// finite and >= 0, and at least one is > 0.
  void validate(std::size_t num_groups) const;
};

/// Scores of every candidate at one round and the candidate that was appended.
struct StepScores {
  std::size_t selected = 0;
  /// (variable, score) in ascending variable order.
  std::vector<std::pair<std::size_t, double>> scores;
};

struct EstimationResult {
  CausalOrdering ordering;
  /// One entry per input group (a single entry for the pooled estimate).
  std::vector<EstimatedConnections> b_matrices;
  std::vector<StepScores> steps;
  std::vector<std::string> warnings;
  /// Deflation stopped before the requested number of orders was reached.
  bool early_stopped = false;
  /// Set when estimation of this result failed outright (separate mode only).
  std::optional<std::string> error;
};

/// Weighted sum over groups of t_kernel for candidate `j`. Every group must hold
/// the same remaining subscripts.
double joint_score(std::size_t j, std::span<const ResidualMatrix> groups, const GroupWeights& weights,
                   const KgvParams& params);

/// Joint estimation of a causal ordering shared by all groups, followed by
/// per-group least-squares connection strengths on the original data.
///
/// Each round scores every remaining candidate j by the weighted sum of
/// T_kernel over groups, appends the minimizer (smallest subscript on ties),
/// and regresses it out of every group. The loop runs min(q, p - 1) rounds and
/// the last variable is appended only when q == p. If any group's remaining
/// rows become numerically constant the loop stops early and the partial
/// ordering is returned with a warning.
EstimationResult estimate_joint(const MultiGroupData& groups, std::size_t q, const GroupWeights& weights,
                                const KgvParams& params);

/// Runs estimate_joint on every group alone. A failure in one group is
/// recorded in that group's `error` and does not affect the others.
std::vector<EstimationResult> estimate_separate(const MultiGroupData& groups, std::size_t q, const KgvParams& params);

enum class PooledCentering { global, per_group };

/// Concatenates all groups into one dataset and estimates a single model.
/// With PooledCentering::global the raw pooled data is centered as a whole.
EstimationResult estimate_naive(const MultiGroupData& groups, std::size_t q, const KgvParams& params,
                                PooledCentering centering = PooledCentering::global);

}  // namespace mlingam
