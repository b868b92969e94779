#include "mlingam/discover.hpp"

#include <cmath>
#include <string>

#include "mlingam/error.hpp"

namespace mlingam {

GroupWeights GroupWeights::sample_size(std::span<const GroupDataset> groups) {
  GroupWeights weights;
  weights.w.reserve(groups.size());
  for (const auto& g : groups) weights.w.push_back(static_cast<double>(g.num_samples()));
  return weights;
}

GroupWeights GroupWeights::uniform(std::size_t num_groups) { return GroupWeights{std::vector<double>(num_groups, 1.0)}; }

void GroupWeights::validate(std::size_t num_groups) const {
  if (w.size() != num_groups) {
    throw InvalidInput("expected " + std::to_string(num_groups) + " group weights, got " + std::to_string(w.size()));
  }
  bool any_positive = false;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) throw InvalidInput("group weights must be finite and nonnegative");
    any_positive = any_positive || x > 0.0;
  }
  if (!any_positive) throw InvalidInput("at least one group weight must be positive");
}

double joint_score(std::size_t j, std::span<const ResidualMatrix> groups, const GroupWeights& weights,
                   const KgvParams& params) {
  weights.validate(groups.size());
  double total = 0.0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (weights.w[g] == 0.0) continue;
    try {
      total += weights.w[g] * t_kernel(groups[g], j, params).value;
    } catch (const DegenerateRegressor& e) {
      throw DegenerateRegressor("group " + std::to_string(g + 1) + ": " + e.what());
    } catch (const DegenerateInput& e) {
      throw DegenerateInput("group " + std::to_string(g + 1) + ": " + e.what());
    }
  }
  return total;
}

namespace {

std::string var_name(std::size_t v) { return "x" + std::to_string(v + 1); }

// Index of the first row whose variance has collapsed relative to its
// starting variance, if any.
std::optional<std::size_t> collapsed_row(const ResidualMatrix& current, const std::vector<double>& original_var) {
  for (std::size_t r = 0; r < current.rows(); ++r) {
    const double var = variance(current.data.row(static_cast<Eigen::Index>(r)));
    if (!(var > kDegenerateVarianceRatio * original_var[current.subscripts[r]])) return r;
  }
  return std::nullopt;
}

}  // namespace

EstimationResult estimate_joint(const MultiGroupData& groups, std::size_t q, const GroupWeights& weights,
                                const KgvParams& params) {
  const std::size_t p = validate_groups(groups);
  if (q < 1 || q > p) throw InvalidInput("q must lie in [1, " + std::to_string(p) + "], got " + std::to_string(q));
  weights.validate(groups.size());
  params.validate();
  const std::size_t c = groups.size();

  MultiGroupData centered;
  centered.reserve(c);
  for (const auto& g : groups) centered.push_back(center(g));

  std::vector<ResidualMatrix> current;
  std::vector<std::vector<double>> original_var(c, std::vector<double>(p));
  current.reserve(c);
  for (std::size_t g = 0; g < c; ++g) {
    current.push_back(ResidualMatrix::from_dataset(centered[g]));
    for (std::size_t i = 0; i < p; ++i) original_var[g][i] = variance(centered[g].data().row(static_cast<Eigen::Index>(i)));
  }

  EstimationResult result;
  std::vector<std::size_t> order;
  const std::size_t rounds = std::min(q, p - 1);

  for (std::size_t round = 0; round < rounds; ++round) {
    std::optional<std::string> stop_reason;
    for (std::size_t g = 0; g < c && !stop_reason; ++g) {
      if (const auto r = collapsed_row(current[g], original_var[g])) {
        stop_reason = "group " + std::to_string(g + 1) + ": residual of " + var_name(current[g].subscripts[*r]) +
                      " has numerically zero variance after " + std::to_string(round) + " deflation rounds";
      }
    }

    const std::vector<std::size_t> candidates = current.front().subscripts;
    // residuals[k][g] = group g with candidates[k] regressed out.
    std::vector<std::vector<ResidualMatrix>> residuals(candidates.size());
    StepScores step;
    std::size_t degenerate_terms = 0;
    if (!stop_reason) {
      try {
        for (std::size_t k = 0; k < candidates.size(); ++k) {
          const std::size_t j = candidates[k];
          residuals[k].reserve(c);
          double total = 0.0;
          for (std::size_t g = 0; g < c; ++g) {
            residuals[k].push_back(deflate(current[g], j));
            if (weights.w[g] == 0.0) continue;
            const TKernelScore s = t_kernel_from_residuals(current[g], j, residuals[k][g], params);
            degenerate_terms += s.degenerate_terms;
            total += weights.w[g] * s.value;
          }
          step.scores.emplace_back(j, total);
        }
      } catch (const Error& e) {
        stop_reason = std::string("round ") + std::to_string(round + 1) + ": " + e.what();
      }
    }
    if (stop_reason) {
      result.early_stopped = true;
      result.warnings.push_back("early stop: " + *stop_reason);
      break;
    }
    if (degenerate_terms > 0) {
      result.warnings.push_back("round " + std::to_string(round + 1) + ": " + std::to_string(degenerate_terms) +
                                " constant residual(s) scored as independent");
    }

    std::size_t best = 0;
    for (std::size_t k = 1; k < step.scores.size(); ++k) {
      if (step.scores[k].second < step.scores[best].second) best = k;
    }
    step.selected = candidates[best];
    order.push_back(step.selected);
    result.steps.push_back(std::move(step));
    current = std::move(residuals[best]);
  }

  if (!result.early_stopped && q == p) order.push_back(current.front().subscripts.front());

  result.ordering = CausalOrdering(order, p);
  result.b_matrices.reserve(c);
  for (std::size_t g = 0; g < c; ++g) result.b_matrices.push_back(fit_lower_triangular(centered[g], result.ordering));
  return result;
}

std::vector<EstimationResult> estimate_separate(const MultiGroupData& groups, std::size_t q, const KgvParams& params) {
  validate_groups(groups);
  std::vector<EstimationResult> results;
  results.reserve(groups.size());
  for (const auto& g : groups) {
    const MultiGroupData single{g};
    try {
      results.push_back(estimate_joint(single, q, GroupWeights::sample_size(single), params));
    } catch (const Error& e) {
      EstimationResult failed;
      failed.error = "group " + std::to_string(g.group_index() + 1) + ": " + e.what();
      failed.ordering = CausalOrdering({}, g.num_variables());
      results.push_back(std::move(failed));
    }
  }
  return results;
}

EstimationResult estimate_naive(const MultiGroupData& groups, std::size_t q, const KgvParams& params,
                                PooledCentering centering) {
  const std::size_t p = validate_groups(groups);
  Eigen::Index total = 0;
  for (const auto& g : groups) total += g.data().cols();
  Matrix pooled(static_cast<Eigen::Index>(p), total);
  Eigen::Index offset = 0;
  for (const auto& g : groups) {
    const Matrix block = centering == PooledCentering::per_group ? center(g).data() : g.data();
    pooled.middleCols(offset, block.cols()) = block;
    offset += block.cols();
  }
  const MultiGroupData single{GroupDataset(std::move(pooled), 0)};
  return estimate_joint(single, q, GroupWeights::sample_size(single), params);
}

}  // namespace mlingam
