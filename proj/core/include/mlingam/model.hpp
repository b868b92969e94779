#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mlingam {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

/// One group's observations: p variables (rows) by n samples (columns).
class GroupDataset {
 public:
  GroupDataset() = default;
  GroupDataset(Matrix data, std::size_t group_index, bool centered = false);

  const Matrix& data() const noexcept { return data_; }
  std::size_t group_index() const noexcept { return group_index_; }
  bool centered() const noexcept { return centered_; }

  std::size_t num_variables() const noexcept { return static_cast<std::size_t>(data_.rows()); }
  std::size_t num_samples() const noexcept { return static_cast<std::size_t>(data_.cols()); }

 private:
  Matrix data_;
  std::size_t group_index_ = 0;
  bool centered_ = false;
};

using MultiGroupData = std::vector<GroupDataset>;

/// Throws InvalidInput unless the collection is non-empty, every group has
/// n >= 2 and p >= 1, and p agrees across groups. Returns p.
std::size_t validate_groups(std::span<const GroupDataset> groups);

/// Direct effects: entry (i, j) is the effect of variable j on variable i.
struct ConnectionMatrix {
  Matrix b;

  ConnectionMatrix() = default;
  explicit ConnectionMatrix(Matrix entries);

  std::size_t size() const noexcept { return static_cast<std::size_t>(b.rows()); }
};

/// Ordered list of distinct 0-based variable indices; may be a prefix (q < p).
class CausalOrdering {
 public:
  CausalOrdering() = default;
  CausalOrdering(std::vector<std::size_t> order, std::size_t num_variables);

  static CausalOrdering identity(std::size_t p);

  const std::vector<std::size_t>& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_.size(); }
  std::size_t num_variables() const noexcept { return p_; }
  bool is_full() const noexcept { return order_.size() == p_; }
  std::size_t operator[](std::size_t t) const { return order_[t]; }

  /// Position of each variable in the ordering, or nullopt when absent.
  std::vector<std::optional<std::size_t>> positions() const;

  friend bool operator==(const CausalOrdering&, const CausalOrdering&) = default;

 private:
  std::vector<std::size_t> order_;
  std::size_t p_ = 0;
};

/// A = (I - B)^-1.
struct TotalEffectMatrix {
  Matrix a;
};

/// Per-variable generative description of one group's external influences.
struct ExternalInfluenceSpec {
  std::vector<std::string> distribution_ids;
  std::vector<double> variances;
};

/// Subtracts each row's empirical mean. Idempotent.
GroupDataset center(const GroupDataset& dataset);

/// Some ordering under which B is strictly lower triangular, found by greedy
/// elimination of variables with no remaining parents. Nullopt if B is cyclic.
std::optional<CausalOrdering> find_causal_ordering(const ConnectionMatrix& b);

TotalEffectMatrix total_effects(const ConnectionMatrix& b);

/// True iff permuting B by the full ordering K gives a strictly lower
/// triangular matrix. Structural zeros are compared exactly against 0.0.
bool is_consistent_with_ordering(const ConnectionMatrix& b, const CausalOrdering& k);

/// True iff K can be completed to a full ordering consistent with B.
bool is_prefix_consistent(const ConnectionMatrix& b, const CausalOrdering& k);

}  // namespace mlingam
