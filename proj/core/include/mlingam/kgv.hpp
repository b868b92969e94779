#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mlingam/model.hpp"
#include "mlingam/regress.hpp"

namespace mlingam {

/// Hyperparameters of the kernel generalized variance estimator.
///
/// The kernel is a Gaussian RBF of width `sigma` on standardized data. The
/// regularizer and rank cap depend on the sample size unless set explicitly:
/// kappa = 2e-2 for n <= 1000 and 2e-3 above, max_rank = min(n, 100).
struct KgvParams {
  double sigma = 1.0;
  std::optional<double> kappa;
  double eta = 1e-5;
  std::optional<std::size_t> max_rank;

  double kappa_for(std::size_t n) const;
  std::size_t max_rank_for(std::size_t n) const;
  /// Throws InvalidInput when a field is out of range.
  void validate() const;
};

/// G with K ~= G G^T, columns in pivot order.
struct LowRankFactor {
  Matrix g;
  std::vector<std::size_t> pivots;

  std::size_t rank() const noexcept { return static_cast<std::size_t>(g.cols()); }
};

/// Rescales a centered row to unit variance (1/n normalization).
/// Throws DegenerateInput on a zero-variance row.
RowVector standardize(ConstRowRef row);

/// Greedy pivoted Cholesky of the Gaussian Gram matrix of `row`; stops once the
/// residual trace is at most eta * n or the rank reaches the cap.
LowRankFactor incomplete_cholesky(ConstRowRef row, const KgvParams& params);

/// Orthonormal basis of one variable's centered kernel feature space together
/// with the regularized shrinkage factor lambda / (lambda + n * kappa / 2) of
/// each direction. Reusable across many pairwise evaluations.
struct KgvBasis {
  Matrix u;
  Vector shrinkage;
};

KgvBasis make_kgv_basis(ConstRowRef row, const KgvParams& params);

/// -1/2 * sum log(1 - rho_t^2) over the regularized kernel canonical
/// correlations between two bases built from rows of the same length.
double kgv_from_bases(const KgvBasis& a, const KgvBasis& b);

/// KGV mutual-information estimate between two centered rows. Both are
/// standardized first; the result is finite and nonnegative.
double kgv_pairwise(ConstRowRef u, ConstRowRef v, const KgvParams& params);

struct TKernelScore {
  double value = 0.0;
  /// Residuals that were numerically constant; their terms were taken as 0.
  std::size_t degenerate_terms = 0;
};

/// Sum of KGV(x_j, r_i^(j)) over every other row i of `rows`, where j is
/// `pivot_subscript`.
TKernelScore t_kernel(const ResidualMatrix& rows, std::size_t pivot_subscript, const KgvParams& params);

/// Same as t_kernel but with the residuals of `pivot_subscript` already
/// computed, as returned by deflate(rows, pivot_subscript).
TKernelScore t_kernel_from_residuals(const ResidualMatrix& rows, std::size_t pivot_subscript,
                                     const ResidualMatrix& residuals, const KgvParams& params);

/// Relative variance below which a residual is treated as constant.
inline constexpr double kDegenerateVarianceRatio = 1e-12;

}  // namespace mlingam
