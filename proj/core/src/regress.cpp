#include "mlingam/regress.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "mlingam/error.hpp"

namespace mlingam {

double covariance(ConstRowRef x, ConstRowRef y) {
  if (x.size() != y.size()) throw InvalidInput("rows differ in length");
  if (x.size() == 0) throw InvalidInput("empty row");
  double sum = 0.0;
  for (Eigen::Index t = 0; t < x.size(); ++t) sum += x(t) * y(t);
  return sum / static_cast<double>(x.size());
}

double variance(ConstRowRef x) { return covariance(x, x); }

ResidualMatrix ResidualMatrix::from_dataset(const GroupDataset& dataset) {
  ResidualMatrix r;
  r.data = dataset.data();
  r.subscripts.resize(dataset.num_variables());
  for (std::size_t i = 0; i < r.subscripts.size(); ++i) r.subscripts[i] = i;
  return r;
}

std::size_t ResidualMatrix::row_of(std::size_t subscript) const {
  const auto it = std::find(subscripts.begin(), subscripts.end(), subscript);
  if (it == subscripts.end()) throw InvalidInput("variable " + std::to_string(subscript + 1) + " is not in the residual set");
  return static_cast<std::size_t>(it - subscripts.begin());
}

RowVector simple_residual(ConstRowRef target, ConstRowRef regressor) {
  const double var = variance(regressor);
  if (!(var > std::numeric_limits<double>::min())) throw DegenerateRegressor("regressor has zero variance");
  const double slope = covariance(target, regressor) / var;
  return target - slope * regressor;
}

ResidualMatrix deflate(const ResidualMatrix& current, std::size_t pivot_subscript) {
  const std::size_t m = current.row_of(pivot_subscript);
  ResidualMatrix next;
  next.data.resize(static_cast<Eigen::Index>(current.rows() - 1), current.data.cols());
  next.subscripts.reserve(current.rows() - 1);
  const ConstRowRef pivot = current.data.row(static_cast<Eigen::Index>(m));
  Eigen::Index out = 0;
  for (std::size_t i = 0; i < current.rows(); ++i) {
    if (i == m) continue;
    next.data.row(out++) = simple_residual(current.data.row(static_cast<Eigen::Index>(i)), pivot);
    next.subscripts.push_back(current.subscripts[i]);
  }
  return next;
}

bool EstimatedConnections::present(std::size_t i, std::size_t j) const {
  const auto in_block = [this](std::size_t v) { return std::find(block.begin(), block.end(), v) != block.end(); };
  return i != j && in_block(i) && in_block(j);
}

EstimatedConnections fit_lower_triangular(const GroupDataset& original, const CausalOrdering& k) {
  const std::size_t p = original.num_variables();
  const std::size_t q = k.size();
  if (k.num_variables() != p) throw InvalidInput("ordering and data disagree on the number of variables");
  if (original.num_samples() <= q && q > 1) {
    throw InvalidInput("least squares on " + std::to_string(q) + " ordered variables needs more than " +
                       std::to_string(q) + " samples");
  }
  const Matrix& x = original.data();
  const auto n = x.cols();
  EstimatedConnections est;
  est.b = Matrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  est.block = k.order();

  for (std::size_t t = 1; t < q; ++t) {
    Matrix preds(static_cast<Eigen::Index>(t), n);
    for (std::size_t s = 0; s < t; ++s) preds.row(static_cast<Eigen::Index>(s)) = x.row(static_cast<Eigen::Index>(k[s]));
    const Matrix gram = preds * preds.transpose();
    const Vector rhs = preds * x.row(static_cast<Eigen::Index>(k[t])).transpose();
    Eigen::LLT<Matrix> llt(gram);
    bool singular = llt.info() != Eigen::Success;
    if (!singular) {
      const Matrix& l = llt.matrixLLT();
      const double scale = gram.diagonal().maxCoeff();
      for (Eigen::Index d = 0; d < l.rows(); ++d) {
        if (!(l(d, d) * l(d, d) > 1e-13 * scale)) singular = true;
      }
    }
    if (singular) {
      throw CollinearityError("predecessors of ordering position " + std::to_string(t + 1) + " (variable " +
                                  std::to_string(k[t] + 1) + ") are collinear",
                              t);
    }
    const Vector coef = llt.solve(rhs);
    for (std::size_t s = 0; s < t; ++s) {
      est.b(static_cast<Eigen::Index>(k[t]), static_cast<Eigen::Index>(k[s])) = coef(static_cast<Eigen::Index>(s));
    }
  }
  return est;
}

}  // namespace mlingam
