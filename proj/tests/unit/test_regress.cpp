#include <gtest/gtest.h>

#include <cmath>

#include "mlingam/error.hpp"
#include "mlingam/regress.hpp"
#include "mlingam/simgen.hpp"
#include "oracles.hpp"

using namespace mlingam;

namespace {

RowVector row(std::initializer_list<double> values) {
  RowVector r(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) r(i++) = v;
  return r;
}

RowVector centered_noise(Rng& rng, Eigen::Index n) {
  RowVector r(n);
  for (Eigen::Index t = 0; t < n; ++t) r(t) = uniform(rng, -1.0, 1.0) + 0.3 * standard_normal(rng);
  return r.array() - r.mean();
}

}  // namespace

TEST(SimpleResidual, SelfRegressionIsZero) {
  Rng rng(1);
  const RowVector x = centered_noise(rng, 50);
  EXPECT_LT(simple_residual(x, x).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(SimpleResidual, UncorrelatedRowUnchanged) {
  const RowVector xj = row({-1, 0, 1, 0});
  const RowVector xi = row({1, -1, 1, -1});
  ASSERT_EQ(covariance(xi, xj), 0.0);
  EXPECT_EQ(simple_residual(xi, xj), xi);
}

TEST(SimpleResidual, HandEvaluatedExample) {
  // cov = 7/3, var = 2/3, slope 3.5.
  const RowVector r = simple_residual(row({-3, -1, 4}), row({-1, 0, 1}));
  EXPECT_NEAR(r(0), 0.5, 1e-14);
  EXPECT_NEAR(r(1), -1.0, 1e-14);
  EXPECT_NEAR(r(2), 0.5, 1e-14);
}

TEST(SimpleResidual, OrthogonalToRegressor) {
  Rng rng(2);
  for (int rep = 0; rep < 100; ++rep) {
    const RowVector xj = centered_noise(rng, 40);
    const RowVector xi = centered_noise(rng, 40) + uniform(rng, -3, 3) * xj;
    EXPECT_LE(std::abs(covariance(simple_residual(xi, xj), xj)), 1e-10);
  }
}

TEST(SimpleResidual, ConstantRegressorRejected) {
  EXPECT_THROW(simple_residual(row({1, -1, 0}), row({0, 0, 0})), DegenerateRegressor);
}

TEST(Deflate, TwoVariablesLeaveOneRow) {
  Rng rng(3);
  Matrix x(2, 20);
  x.row(0) = centered_noise(rng, 20);
  x.row(1) = centered_noise(rng, 20);
  const ResidualMatrix r = deflate(ResidualMatrix::from_dataset(GroupDataset(x, 0, true)), 0);
  EXPECT_EQ(r.rows(), 1u);
  EXPECT_EQ(r.subscripts, std::vector<std::size_t>{1});
}

TEST(Deflate, ExogenousPivotLeavesStructuralNoise) {
  Rng rng(4);
  const Eigen::Index n = 10000;
  RowVector x1 = centered_noise(rng, n);
  RowVector e2 = centered_noise(rng, n);
  Matrix x(2, n);
  x.row(0) = x1;
  x.row(1) = 2.0 * x1 + e2;
  const GroupDataset g = center(GroupDataset(x, 0));
  const ResidualMatrix r = deflate(ResidualMatrix::from_dataset(g), 0);
  const RowVector e2c = e2.array() - e2.mean();
  const double rms = std::sqrt((r.data.row(0) - e2c).squaredNorm() / static_cast<double>(n));
  EXPECT_LT(rms, 0.05);
}

TEST(Deflate, SequentialMatchesJointRegression) {
  Rng rng(5);
  for (int rep = 0; rep < 30; ++rep) {
    const Eigen::Index n = 60;
    const std::size_t p = 5;
    Matrix x(static_cast<Eigen::Index>(p), n);
    for (std::size_t i = 0; i < p; ++i) x.row(static_cast<Eigen::Index>(i)) = centered_noise(rng, n);
    x.row(3) += 0.7 * x.row(0) - 1.1 * x.row(1);
    x.row(4) += 1.3 * x.row(3);
    const GroupDataset g = center(GroupDataset(x, 0));

    for (std::size_t d = 1; d < p; ++d) {
      ResidualMatrix r = ResidualMatrix::from_dataset(g);
      Matrix regressors(static_cast<Eigen::Index>(d), n);
      for (std::size_t k = 0; k < d; ++k) {
        r = deflate(r, k);
        regressors.row(static_cast<Eigen::Index>(k)) = g.data().row(static_cast<Eigen::Index>(k));
      }
      for (std::size_t i = d; i < p; ++i) {
        const RowVector oracle = oracle::qr_residual(g.data().row(static_cast<Eigen::Index>(i)), regressors);
        const RowVector got = r.data.row(static_cast<Eigen::Index>(r.row_of(i)));
        EXPECT_LT((got - oracle).cwiseAbs().maxCoeff(), 1e-8) << "d=" << d << " i=" << i;
      }
    }
  }
}

TEST(Deflate, ResidualsUncorrelatedWithPivot) {
  Rng rng(6);
  Matrix x(4, 80);
  for (Eigen::Index i = 0; i < 4; ++i) x.row(i) = centered_noise(rng, 80);
  x.row(1) += x.row(2);
  const GroupDataset g = center(GroupDataset(x, 0));
  const ResidualMatrix r = deflate(ResidualMatrix::from_dataset(g), 2);
  for (std::size_t k = 0; k < r.rows(); ++k) {
    const auto row_k = r.data.row(static_cast<Eigen::Index>(k));
    EXPECT_LE(std::abs(covariance(row_k, g.data().row(2))), 1e-10);
    EXPECT_LE(std::abs(row_k.mean()), 1e-12);
  }
}

TEST(Deflate, MissingPivotRejected) {
  const ResidualMatrix r = ResidualMatrix::from_dataset(GroupDataset(Matrix::Ones(2, 3), 0));
  EXPECT_THROW(deflate(r, 5), InvalidInput);
}

TEST(FitLowerTriangular, SingleOrderHasNoEntries) {
  Rng rng(7);
  Matrix x(3, 10);
  for (Eigen::Index i = 0; i < 3; ++i) x.row(i) = centered_noise(rng, 10);
  const EstimatedConnections est = fit_lower_triangular(GroupDataset(x, 0, true), CausalOrdering({1}, 3));
  EXPECT_EQ(est.b, Matrix::Zero(3, 3));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_FALSE(est.present(i, j));
  }
}

TEST(FitLowerTriangular, NoiselessSystemRecoversCoefficients) {
  Rng rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t p = 2 + static_cast<std::size_t>(rep % 5);
    std::vector<std::size_t> order;
    const Matrix b = oracle::random_dag(p, 0.7, rng, &order);
    const GroupDataset g = oracle::noiseless_structural(b, order, 200, rng);
    const EstimatedConnections est = fit_lower_triangular(g, CausalOrdering(order, p));
    EXPECT_LT((est.b - b).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(FitLowerTriangular, PartialBlockPlacement) {
  Rng rng(9);
  Matrix x(4, 50);
  for (Eigen::Index i = 0; i < 4; ++i) x.row(i) = centered_noise(rng, 50);
  x.row(0) += 0.9 * x.row(3);
  const GroupDataset g = center(GroupDataset(x, 0));
  const EstimatedConnections est = fit_lower_triangular(g, CausalOrdering({3, 0}, 4));
  EXPECT_TRUE(est.present(0, 3));
  EXPECT_TRUE(est.present(3, 0));
  EXPECT_FALSE(est.present(1, 3));
  EXPECT_EQ(est.b(3, 0), 0.0);
  EXPECT_NEAR(est.b(0, 3), covariance(g.data().row(0), g.data().row(3)) / variance(g.data().row(3)), 1e-12);
}

TEST(FitLowerTriangular, CollinearPredecessorsNamePosition) {
  Rng rng(10);
  Matrix x(3, 20);
  x.row(0) = centered_noise(rng, 20);
  x.row(1) = 2.0 * x.row(0);
  x.row(2) = centered_noise(rng, 20);
  try {
    fit_lower_triangular(GroupDataset(x, 0, true), CausalOrdering({0, 1, 2}, 3));
    FAIL() << "expected CollinearityError";
  } catch (const CollinearityError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(FitLowerTriangular, TooFewSamplesRejected) {
  EXPECT_THROW(fit_lower_triangular(GroupDataset(Matrix::Random(4, 3), 0, true), CausalOrdering::identity(4)),
               InvalidInput);
}

TEST(FitLowerTriangular, ConvergesAtLargeSampleSize) {
  SimSpec spec;
  spec.p = 4;
  spec.sample_sizes = {100000};
  spec.sparsity = 1.0;
  spec.seed = 12;
  const Simulation sim = generate(spec);
  const EstimatedConnections est = fit_lower_triangular(center(sim.data[0]), sim.truth.ordering);
  EXPECT_LT((est.b - sim.truth.groups[0].b.b).cwiseAbs().maxCoeff(), 0.02);
}
