#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mlingam/random.hpp"

namespace mlingam {

enum class DistributionKind { student_t, laplace, uniform, exponential, gaussian_mixture, laplace_mixture };

struct MixtureComponent {
  double weight = 0.0;
  double mean = 0.0;
  double sd = 1.0;
};

/// A non-Gaussian base distribution. Samples are standardized to zero mean and
/// unit variance using the analytic moments of the base distribution.
struct Distribution {
  std::string id;
  DistributionKind kind = DistributionKind::uniform;
  int dof = 0;
  std::vector<MixtureComponent> components;

  double raw_mean() const;
  double raw_variance() const;
  /// One draw with zero mean and unit variance.
  double sample(Rng& rng) const;

 private:
  double sample_raw(Rng& rng) const;
};

class DistributionCatalog {
 public:
  DistributionCatalog() = default;
  explicit DistributionCatalog(std::vector<Distribution> entries);

  /// Parses the catalog schema (see core/data/distributions.json).
  /// Throws InvalidInput on malformed entries.
  static DistributionCatalog from_json(const nlohmann::json& doc);
  static DistributionCatalog from_file(const std::string& path);
  /// The catalog compiled in from core/data/distributions.json.
  static const DistributionCatalog& builtin();

  std::size_t size() const noexcept { return entries_.size(); }
  const Distribution& operator[](std::size_t i) const { return entries_[i]; }
  const Distribution& find(std::string_view id) const;
  const std::vector<Distribution>& entries() const noexcept { return entries_; }

 private:
  std::vector<Distribution> entries_;
};

}  // namespace mlingam
