#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mlingam/distributions.hpp"
#include "mlingam/model.hpp"
#include "mlingam/random.hpp"

namespace mlingam {

enum class StructureSharing {
  /// Support and coefficients drawn independently per group.
  independent,
  /// One support for all groups; coefficients drawn per group.
  support,
  /// One support and one coefficient set for all groups.
  full,
};

/// Generator configuration for synthetic multi-group LiNGAM data.
struct SimSpec {
  std::size_t p = 0;
  /// One entry per group; c = sample_sizes.size().
  std::vector<std::size_t> sample_sizes;
  /// Edge probability; default_sparsity(p) when unset.
  std::optional<double> sparsity;
  double coef_lo = 0.5;
  double coef_hi = 1.5;
  double variance_lo = 1.0;
  double variance_hi = 3.0;
  double mean_variance = 4.0;
  /// Draw one distribution per variable shared by all groups instead of one
  /// per (variable, group).
  bool share_distributions = false;
  /// What the groups' connection matrices have in common beyond the ordering.
  StructureSharing structure_sharing = StructureSharing::independent;
  std::uint64_t seed = 0;

  std::size_t num_groups() const noexcept { return sample_sizes.size(); }
  double resolved_sparsity() const;
  void validate() const;
};

/// s = p / (2 (p - 1)): each variable then has p / 2 expected neighbours.
double default_sparsity(std::size_t p);

struct GroupTruth {
  ConnectionMatrix b;
  ExternalInfluenceSpec influences;
  std::vector<double> means;
};

struct GroundTruth {
  /// Shared causal ordering of the observed variables.
  CausalOrdering ordering;
  std::vector<GroupTruth> groups;
  double sparsity = 0.0;
  std::uint64_t seed = 0;
};

struct Simulation {
  MultiGroupData data;
  GroundTruth truth;
};

/// Per-group strictly lower triangular connection matrices in causal
/// coordinates (row t is the t-th variable of the ordering).
std::vector<Matrix> sample_structure(const SimSpec& spec, Rng& rng);

struct InfluenceSamples {
  /// p x n_g per group, causal coordinates.
  std::vector<Matrix> samples;
  std::vector<ExternalInfluenceSpec> specs;
};

InfluenceSamples sample_influences(const SimSpec& spec, const DistributionCatalog& catalog, Rng& rng);

/// Full protocol: structures, influences, x = (I - B)^-1 e by forward
/// substitution, Gaussian means, and one variable permutation applied to all
/// groups. Seeded from spec.seed.
Simulation generate(const SimSpec& spec, const DistributionCatalog& catalog = DistributionCatalog::builtin());
Simulation generate(const SimSpec& spec, Rng& rng, const DistributionCatalog& catalog = DistributionCatalog::builtin());

}  // namespace mlingam
