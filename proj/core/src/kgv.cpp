#include "mlingam/kgv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mlingam/error.hpp"

namespace mlingam {

namespace {

constexpr double kMaxCorrelation = 1.0 - 1e-12;

}  // namespace

double KgvParams::kappa_for(std::size_t n) const {
  if (kappa) return *kappa;
  return n <= 1000 ? 2e-2 : 2e-3;
}

std::size_t KgvParams::max_rank_for(std::size_t n) const {
  const std::size_t cap = max_rank ? *max_rank : std::size_t{100};
  return std::min(n, cap);
}

void KgvParams::validate() const {
  if (!(sigma > 0.0)) throw InvalidInput("kernel width sigma must be positive");
  if (kappa && !(*kappa > 0.0)) throw InvalidInput("regularizer kappa must be positive");
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidInput("Cholesky precision eta must lie in (0, 1)");
  if (max_rank && *max_rank < 1) throw InvalidInput("max_rank must be at least 1");
}

RowVector standardize(ConstRowRef row) {
  const double var = variance(row);
  if (!(var > std::numeric_limits<double>::min())) throw DegenerateInput("cannot standardize a zero-variance row");
  return row / std::sqrt(var);
}

LowRankFactor incomplete_cholesky(ConstRowRef row, const KgvParams& params) {
  const auto n = row.size();
  if (n < 2) throw InvalidInput("incomplete Cholesky needs at least 2 samples");
  const auto cap = static_cast<Eigen::Index>(params.max_rank_for(static_cast<std::size_t>(n)));
  const double tolerance = params.eta * static_cast<double>(n);
  const double inv_two_sigma2 = 1.0 / (2.0 * params.sigma * params.sigma);

  Matrix g = Matrix::Zero(n, cap);
  Vector residual_diag = Vector::Ones(n);
  std::vector<bool> pivoted(static_cast<std::size_t>(n), false);
  LowRankFactor out;

  Eigen::Index k = 0;
  while (k < cap) {
    double remaining = 0.0;
    Eigen::Index best = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (pivoted[static_cast<std::size_t>(i)]) continue;
      remaining += residual_diag(i);
      if (best < 0 || residual_diag(i) > residual_diag(best)) best = i;
    }
    if (best < 0 || remaining <= tolerance || residual_diag(best) <= 0.0) break;

    const double pivot_value = std::sqrt(residual_diag(best));
    pivoted[static_cast<std::size_t>(best)] = true;
    g(best, k) = pivot_value;
    residual_diag(best) = 0.0;
    const double xb = row(best);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (pivoted[static_cast<std::size_t>(i)]) continue;
      const double d = row(i) - xb;
      double value = std::exp(-d * d * inv_two_sigma2);
      for (Eigen::Index s = 0; s < k; ++s) value -= g(i, s) * g(best, s);
      value /= pivot_value;
      g(i, k) = value;
      residual_diag(i) = std::max(0.0, residual_diag(i) - value * value);
    }
    out.pivots.push_back(static_cast<std::size_t>(best));
    ++k;
  }
  out.g = g.leftCols(k);
  return out;
}

KgvBasis make_kgv_basis(ConstRowRef row, const KgvParams& params) {
  const RowVector z = standardize(row);
  const auto n = static_cast<std::size_t>(z.size());
  const LowRankFactor factor = incomplete_cholesky(z, params);

  Matrix gc = factor.g;
  gc.rowwise() -= gc.colwise().mean();

  const Eigen::SelfAdjointEigenSolver<Matrix> eig(gc.transpose() * gc);
  const Vector& lambda = eig.eigenvalues();
  const double floor = params.eta * static_cast<double>(n);
  const double ridge = static_cast<double>(n) * params.kappa_for(n) / 2.0;

  std::vector<Eigen::Index> kept;
  for (Eigen::Index t = lambda.size() - 1; t >= 0; --t) {
    if (lambda(t) > floor) kept.push_back(t);
  }

  KgvBasis basis;
  basis.u.resize(gc.rows(), static_cast<Eigen::Index>(kept.size()));
  basis.shrinkage.resize(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const Eigen::Index t = kept[c];
    const auto col = static_cast<Eigen::Index>(c);
    basis.u.col(col) = gc * eig.eigenvectors().col(t) / std::sqrt(lambda(t));
    basis.shrinkage(col) = lambda(t) / (lambda(t) + ridge);
  }
  return basis;
}

double kgv_from_bases(const KgvBasis& a, const KgvBasis& b) {
  if (a.u.rows() != b.u.rows()) throw InvalidInput("KGV arguments differ in sample size");
  if (a.u.cols() == 0 || b.u.cols() == 0) return 0.0;
  const Matrix c = a.shrinkage.asDiagonal() * (a.u.transpose() * b.u) * b.shrinkage.asDiagonal();
  const Eigen::JacobiSVD<Matrix> svd(c);
  double sum = 0.0;
  for (Eigen::Index t = 0; t < svd.singularValues().size(); ++t) {
    const double rho = std::clamp(svd.singularValues()(t), 0.0, kMaxCorrelation);
    sum += std::log1p(-rho * rho);
  }
  return std::max(0.0, -0.5 * sum);
}

double kgv_pairwise(ConstRowRef u, ConstRowRef v, const KgvParams& params) {
  if (u.size() != v.size()) throw InvalidInput("KGV arguments differ in sample size");
  return kgv_from_bases(make_kgv_basis(u, params), make_kgv_basis(v, params));
}

TKernelScore t_kernel(const ResidualMatrix& rows, std::size_t pivot_subscript, const KgvParams& params) {
  return t_kernel_from_residuals(rows, pivot_subscript, deflate(rows, pivot_subscript), params);
}

TKernelScore t_kernel_from_residuals(const ResidualMatrix& rows, std::size_t pivot_subscript,
                                     const ResidualMatrix& residuals, const KgvParams& params) {
  if (rows.rows() < 2) throw InvalidInput("t_kernel needs at least two variables");
  const KgvBasis pivot = make_kgv_basis(rows.data.row(static_cast<Eigen::Index>(rows.row_of(pivot_subscript))), params);
  TKernelScore score;
  for (std::size_t r = 0; r < residuals.rows(); ++r) {
    const ConstRowRef res = residuals.data.row(static_cast<Eigen::Index>(r));
    const ConstRowRef target = rows.data.row(static_cast<Eigen::Index>(rows.row_of(residuals.subscripts[r])));
    const double target_var = variance(target);
    if (!(variance(res) > kDegenerateVarianceRatio * target_var)) {
      ++score.degenerate_terms;
      continue;
    }
    score.value += kgv_from_bases(pivot, make_kgv_basis(res, params));
  }
  return score;
}

}  // namespace mlingam
