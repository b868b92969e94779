#pragma once

#include <cstddef>
#include <vector>

#include "mlingam/model.hpp"

namespace mlingam {

/// A (possibly strided) read-only view of one data row.
using ConstRowRef = Eigen::Ref<const RowVector, 0, Eigen::InnerStride<>>;

/// Empirical covariance with 1/n normalization, summed left to right.
double covariance(ConstRowRef x, ConstRowRef y);
double variance(ConstRowRef x);

/// Rows still in play after some deflation rounds, with the original
/// variable index of each row.
struct ResidualMatrix {
  Matrix data;
  std::vector<std::size_t> subscripts;

  static ResidualMatrix from_dataset(const GroupDataset& dataset);

  std::size_t rows() const noexcept { return subscripts.size(); }
  /// Row index holding original variable `subscript`; throws InvalidInput if absent.
  std::size_t row_of(std::size_t subscript) const;
};

/// x_i - cov(x_i, x_j) / var(x_j) * x_j. Both rows must be centered.
/// Throws DegenerateRegressor when x_j has zero variance.
RowVector simple_residual(ConstRowRef target, ConstRowRef regressor);

/// Regresses the pivot variable out of every other row and drops the pivot row.
ResidualMatrix deflate(const ResidualMatrix& current, std::size_t pivot_subscript);

/// Least-squares estimate of the strictly lower triangular block B_q along an
/// ordering. Entry (i, j) is present only when both i and j are in `block`.
struct EstimatedConnections {
  Matrix b;
  std::vector<std::size_t> block;

  bool present(std::size_t i, std::size_t j) const;
};

/// Regresses each K[t] on K[0..t-1] using the original centered data.
/// Throws CollinearityError when a predecessor Gram matrix is singular.
EstimatedConnections fit_lower_triangular(const GroupDataset& original, const CausalOrdering& k);

}  // namespace mlingam
