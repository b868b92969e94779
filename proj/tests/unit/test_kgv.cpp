#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mlingam/distributions.hpp"
#include "mlingam/error.hpp"
#include "mlingam/kgv.hpp"
#include "oracles.hpp"

using namespace mlingam;

namespace {

RowVector draw(Rng& rng, Eigen::Index n, const Distribution& dist) {
  RowVector r(n);
  for (Eigen::Index t = 0; t < n; ++t) r(t) = dist.sample(rng);
  return r.array() - r.mean();
}

RowVector draw_uniform(Rng& rng, Eigen::Index n) { return draw(rng, n, DistributionCatalog::builtin().find("uniform")); }

RowVector shuffled(const RowVector& x, Rng& rng) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(x.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  for (std::size_t t = idx.size(); t > 1; --t) {
    std::swap(idx[t - 1], idx[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(t))]);
  }
  RowVector out(x.size());
  for (Eigen::Index t = 0; t < x.size(); ++t) out(t) = x(idx[static_cast<std::size_t>(t)]);
  return out;
}

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double var(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST(KgvParams, Defaults) {
  const KgvParams p;
  EXPECT_EQ(p.sigma, 1.0);
  EXPECT_EQ(p.eta, 1e-5);
  EXPECT_EQ(p.kappa_for(1000), 2e-2);
  EXPECT_EQ(p.kappa_for(1001), 2e-3);
  EXPECT_EQ(p.max_rank_for(50), 50u);
  EXPECT_EQ(p.max_rank_for(5000), 100u);
}

TEST(KgvParams, ValidationRejectsOutOfRange) {
  KgvParams p;
  p.sigma = 0.0;
  EXPECT_THROW(p.validate(), InvalidInput);
  p = KgvParams{};
  p.eta = 1.0;
  EXPECT_THROW(p.validate(), InvalidInput);
  p = KgvParams{};
  p.kappa = -1.0;
  EXPECT_THROW(p.validate(), InvalidInput);
  p = KgvParams{};
  p.max_rank = 0;
  EXPECT_THROW(p.validate(), InvalidInput);
}

TEST(Standardize, ThreePointRow) {
  RowVector r(3);
  r << -1, 0, 1;
  const RowVector z = standardize(r);
  EXPECT_NEAR(z(0), -std::sqrt(1.5), 1e-15);
  EXPECT_EQ(z(1), 0.0);
  EXPECT_NEAR(z(2), std::sqrt(1.5), 1e-15);
}

TEST(Standardize, UnitVarianceRowUnchanged) {
  RowVector r(4);
  r << -1, 1, -1, 1;
  EXPECT_LT((standardize(r) - r).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Standardize, ConstantRowRejected) { EXPECT_THROW(standardize(RowVector::Zero(5)), DegenerateInput); }

TEST(IncompleteCholesky, IdenticalPointsGiveRankOne) {
  const LowRankFactor f = incomplete_cholesky(RowVector::Constant(6, 0.3), KgvParams{});
  ASSERT_EQ(f.rank(), 1u);
  EXPECT_LT((f.g * f.g.transpose() - Matrix::Ones(6, 6)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(IncompleteCholesky, TraceOfThreePoints) {
  RowVector r(3);
  r << -1, 0, 1;
  const KgvParams params;
  const LowRankFactor f = incomplete_cholesky(r, params);
  EXPECT_LE(std::abs((f.g * f.g.transpose()).trace() - 3.0), params.eta * 3.0);
}

TEST(IncompleteCholesky, ResidualTraceBoundAgainstDenseGram) {
  Rng rng(4);
  const RowVector z = standardize(draw_uniform(rng, 200));
  KgvParams params;
  const LowRankFactor f = incomplete_cholesky(z, params);
  Matrix k(200, 200);
  for (Eigen::Index a = 0; a < 200; ++a) {
    for (Eigen::Index b = 0; b < 200; ++b) k(a, b) = std::exp(-0.5 * (z(a) - z(b)) * (z(a) - z(b)));
  }
  const Matrix residual = k - f.g * f.g.transpose();
  EXPECT_LE(residual.trace(), params.eta * 200.0);
  EXPECT_GE(residual.trace(), -1e-9);
  // The residual of a pivoted Cholesky is positive semidefinite, so its trace bounds its trace norm.
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(residual);
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-9);
  EXPECT_LT(f.rank(), 200u);
}

TEST(IncompleteCholesky, RankCapRespected) {
  Rng rng(5);
  KgvParams params;
  params.max_rank = 3;
  EXPECT_EQ(incomplete_cholesky(standardize(draw_uniform(rng, 100)), params).rank(), 3u);
}

TEST(KgvPairwise, IndependentPairNearZeroAndBelowSelfDependence) {
  Rng rng(6);
  const RowVector u = draw_uniform(rng, 1000);
  const RowVector v = draw_uniform(rng, 1000);
  const double indep = kgv_pairwise(u, v, KgvParams{});
  const double self = kgv_pairwise(u, u, KgvParams{});
  EXPECT_GE(indep, 0.0);
  EXPECT_LT(indep, 0.1);
  EXPECT_LT(indep, self);
}

TEST(KgvPairwise, PerfectDependenceDominates) {
  Rng rng(7);
  const RowVector u = draw_uniform(rng, 500);
  const RowVector v = draw_uniform(rng, 500);
  EXPECT_GE(kgv_pairwise(u, u, KgvParams{}), 10.0 * kgv_pairwise(u, v, KgvParams{}));

  const RowVector u200 = u.head(200).array() - u.head(200).mean();
  const RowVector v200 = v.head(200).array() - v.head(200).mean();
  const double dense_self = oracle::dense_kgv(u200, u200, 1.0, 2e-2);
  const double dense_indep = oracle::dense_kgv(u200, v200, 1.0, 2e-2);
  EXPECT_GE(dense_self, 10.0 * dense_indep);
  EXPECT_NEAR(kgv_pairwise(u200, u200, KgvParams{}), dense_self, 1e-3 * dense_self);
}

TEST(KgvPairwise, ShuffledCopyLooksIndependent) {
  Rng rng(8);
  const RowVector u = draw_uniform(rng, 200);
  std::vector<double> shuffle_scores, indep_scores;
  for (int rep = 0; rep < 100; ++rep) {
    RowVector s = shuffled(u, rng);
    s.array() -= s.mean();
    shuffle_scores.push_back(kgv_pairwise(u, s, KgvParams{}));
    indep_scores.push_back(kgv_pairwise(u, draw_uniform(rng, 200), KgvParams{}));
  }
  const double se = std::sqrt(var(shuffle_scores) / 100.0 + var(indep_scores) / 100.0);
  EXPECT_LT(std::abs(mean(shuffle_scores) - mean(indep_scores)), 4.0 * se);
}

TEST(KgvPairwise, SymmetricSignInvariantNonnegative) {
  const auto& catalog = DistributionCatalog::builtin();
  Rng rng(9);
  for (int rep = 0; rep < 40; ++rep) {
    const auto& d1 = catalog[static_cast<std::size_t>(rep) % catalog.size()];
    const auto& d2 = catalog[static_cast<std::size_t>(rep * 7 + 3) % catalog.size()];
    const RowVector u = draw(rng, 120, d1);
    RowVector v = draw(rng, 120, d2) + uniform(rng, -1, 1) * u;
    v.array() -= v.mean();
    const double uv = kgv_pairwise(u, v, KgvParams{});
    EXPECT_GE(uv, 0.0);
    EXPECT_TRUE(std::isfinite(uv));
    EXPECT_NEAR(uv, kgv_pairwise(v, u, KgvParams{}), 1e-9);
    const RowVector neg_u = -u;
    const RowVector neg_v = -v;
    EXPECT_NEAR(uv, kgv_pairwise(neg_u, v, KgvParams{}), 1e-9);
    EXPECT_NEAR(uv, kgv_pairwise(u, neg_v, KgvParams{}), 1e-9);
  }
}

TEST(KgvPairwise, LowRankMatchesDenseOracle) {
  const auto& catalog = DistributionCatalog::builtin();
  Rng rng(10);
  KgvParams params;
  params.eta = 1e-6;
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index n = 40 + 8 * rep;
    const RowVector u = draw(rng, n, catalog[static_cast<std::size_t>(rep) % catalog.size()]);
    RowVector v = draw(rng, n, catalog[static_cast<std::size_t>(rep + 5) % catalog.size()]) + 0.5 * u;
    v.array() -= v.mean();
    const double fast = kgv_pairwise(u, v, params);
    const double dense = oracle::dense_kgv(u, v, params.sigma, params.kappa_for(static_cast<std::size_t>(n)));
    EXPECT_NEAR(fast, dense, 1e-3 * dense) << "n=" << n;
  }
}

TEST(KgvPairwise, MonotoneInDependenceStrength) {
  Rng rng(11);
  const std::vector<double> alphas{0.0, 0.5, 1.0, 2.0};
  std::vector<double> avg(alphas.size(), 0.0);
  for (int seed = 0; seed < 20; ++seed) {
    const RowVector e = draw_uniform(rng, 1000);
    const RowVector w = draw_uniform(rng, 1000);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      RowVector v = alphas[a] * e + w;
      v.array() -= v.mean();
      avg[a] += kgv_pairwise(e, v, KgvParams{}) / 20.0;
    }
  }
  for (std::size_t a = 1; a < alphas.size(); ++a) EXPECT_GE(avg[a], avg[a - 1]);
}

TEST(KgvPairwise, LengthMismatchAndDegenerateRejected) {
  Rng rng(12);
  EXPECT_THROW(kgv_pairwise(draw_uniform(rng, 10), draw_uniform(rng, 11), KgvParams{}), InvalidInput);
  EXPECT_THROW(kgv_pairwise(draw_uniform(rng, 10), RowVector::Zero(10), KgvParams{}), DegenerateInput);
}

TEST(TKernel, TwoVariablesHaveOneTerm) {
  Rng rng(13);
  Matrix x(2, 150);
  x.row(0) = draw_uniform(rng, 150);
  x.row(1) = draw_uniform(rng, 150) + 0.8 * x.row(0);
  const GroupDataset g = center(GroupDataset(x, 0));
  const ResidualMatrix rows = ResidualMatrix::from_dataset(g);
  const RowVector r = simple_residual(g.data().row(1), g.data().row(0));
  const double expected = kgv_pairwise(g.data().row(0), r, KgvParams{});
  EXPECT_DOUBLE_EQ(t_kernel(rows, 0, KgvParams{}).value, expected);
}

TEST(TKernel, SumsOverEveryOtherRow) {
  Rng rng(14);
  Matrix x(4, 100);
  for (Eigen::Index i = 0; i < 4; ++i) x.row(i) = draw_uniform(rng, 100);
  x.row(2) += x.row(1);
  const GroupDataset g = center(GroupDataset(x, 0));
  const ResidualMatrix rows = ResidualMatrix::from_dataset(g);
  double expected = 0.0;
  for (Eigen::Index i : {0, 2, 3}) {
    expected += kgv_pairwise(g.data().row(1), simple_residual(g.data().row(i), g.data().row(1)), KgvParams{});
  }
  EXPECT_NEAR(t_kernel(rows, 1, KgvParams{}).value, expected, 1e-12);
}

TEST(TKernel, ConstantResidualScoresZero) {
  Rng rng(15);
  Matrix x(3, 60);
  x.row(0) = draw_uniform(rng, 60);
  x.row(1) = -2.0 * x.row(0);
  x.row(2) = draw_uniform(rng, 60);
  const GroupDataset g = center(GroupDataset(x, 0));
  const TKernelScore s = t_kernel(ResidualMatrix::from_dataset(g), 0, KgvParams{});
  EXPECT_EQ(s.degenerate_terms, 1u);
  EXPECT_NEAR(s.value, kgv_pairwise(g.data().row(0), simple_residual(g.data().row(2), g.data().row(0)), KgvParams{}),
              1e-12);
}

TEST(TKernel, EmptyGraphScoresComparable) {
  Rng rng(16);
  Matrix x(3, 300);
  for (Eigen::Index i = 0; i < 3; ++i) x.row(i) = draw_uniform(rng, 300);
  const ResidualMatrix rows = ResidualMatrix::from_dataset(center(GroupDataset(x, 0)));
  for (std::size_t j = 0; j < 3; ++j) EXPECT_LT(t_kernel(rows, j, KgvParams{}).value, 0.3);
}
