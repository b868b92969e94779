#include "mlingam/model.hpp"

#include <algorithm>
#include <string>

#include "mlingam/error.hpp"

namespace mlingam {

GroupDataset::GroupDataset(Matrix data, std::size_t group_index, bool centered)
    : data_(std::move(data)), group_index_(group_index), centered_(centered) {}

std::size_t validate_groups(std::span<const GroupDataset> groups) {
  if (groups.empty()) throw InvalidInput("no groups supplied");
  const std::size_t p = groups.front().num_variables();
  for (const auto& g : groups) {
    if (g.num_variables() < 1) throw InvalidInput("group " + std::to_string(g.group_index()) + " has no variables");
    if (g.num_samples() < 2)
      throw InvalidInput("group " + std::to_string(g.group_index()) + " has fewer than 2 samples");
    if (g.num_variables() != p)
      throw InvalidInput("group " + std::to_string(g.group_index()) + " has " +
                         std::to_string(g.num_variables()) + " variables, expected " + std::to_string(p));
  }
  return p;
}

ConnectionMatrix::ConnectionMatrix(Matrix entries) : b(std::move(entries)) {
  if (b.rows() != b.cols()) throw InvalidInput("connection matrix must be square");
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    if (b(i, i) != 0.0) throw InvalidInput("connection matrix diagonal must be zero");
  }
}

CausalOrdering::CausalOrdering(std::vector<std::size_t> order, std::size_t num_variables)
    : order_(std::move(order)), p_(num_variables) {
  if (order_.size() > p_) throw InvalidInput("ordering longer than the number of variables");
  std::vector<bool> seen(p_, false);
  for (std::size_t v : order_) {
    if (v >= p_) throw InvalidInput("ordering entry " + std::to_string(v + 1) + " out of range");
    if (seen[v]) throw InvalidInput("ordering repeats variable " + std::to_string(v + 1));
    seen[v] = true;
  }
}

CausalOrdering CausalOrdering::identity(std::size_t p) {
  std::vector<std::size_t> order(p);
  for (std::size_t i = 0; i < p; ++i) order[i] = i;
  return CausalOrdering(std::move(order), p);
}

std::vector<std::optional<std::size_t>> CausalOrdering::positions() const {
  std::vector<std::optional<std::size_t>> pos(p_);
  for (std::size_t t = 0; t < order_.size(); ++t) pos[order_[t]] = t;
  return pos;
}

GroupDataset center(const GroupDataset& dataset) {
  if (dataset.num_samples() == 0 || dataset.num_variables() == 0) throw InvalidInput("cannot center an empty dataset");
  if (dataset.num_samples() < 2) throw InvalidInput("centering requires at least 2 samples");
  Matrix x = dataset.data();
  const Vector means = x.rowwise().mean();
  x.colwise() -= means;
  return GroupDataset(std::move(x), dataset.group_index(), true);
}

std::optional<CausalOrdering> find_causal_ordering(const ConnectionMatrix& b) {
  const std::size_t p = b.size();
  std::vector<bool> placed(p, false);
  std::vector<std::size_t> order;
  order.reserve(p);
  while (order.size() < p) {
    bool progressed = false;
    for (std::size_t i = 0; i < p; ++i) {
      if (placed[i]) continue;
      bool has_open_parent = false;
      for (std::size_t j = 0; j < p && !has_open_parent; ++j) {
        if (!placed[j] && b.b(i, j) != 0.0) has_open_parent = true;
      }
      if (!has_open_parent) {
        placed[i] = true;
        order.push_back(i);
        progressed = true;
        break;
      }
    }
    if (!progressed) return std::nullopt;
  }
  return CausalOrdering(std::move(order), p);
}

TotalEffectMatrix total_effects(const ConnectionMatrix& b) {
  const auto ordering = find_causal_ordering(b);
  if (!ordering) throw AcyclicityError("connection matrix is cyclic");
  const std::size_t p = b.size();
  // Row i of A satisfies a_i = e_i + sum_j b_ij a_j; parents precede i in the ordering.
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::size_t t = 0; t < p; ++t) {
    const auto i = static_cast<Eigen::Index>((*ordering)[t]);
    a(i, i) = 1.0;
    for (std::size_t s = 0; s < t; ++s) {
      const auto j = static_cast<Eigen::Index>((*ordering)[s]);
      if (b.b(i, j) != 0.0) a.row(i) += b.b(i, j) * a.row(j);
    }
  }
  return TotalEffectMatrix{std::move(a)};
}

bool is_consistent_with_ordering(const ConnectionMatrix& b, const CausalOrdering& k) {
  if (k.num_variables() != b.size()) throw InvalidInput("ordering and matrix disagree on the number of variables");
  if (!k.is_full()) throw InvalidInput("is_consistent_with_ordering requires a full ordering; use is_prefix_consistent");
  return is_prefix_consistent(b, k);
}

bool is_prefix_consistent(const ConnectionMatrix& b, const CausalOrdering& k) {
  if (k.num_variables() != b.size()) throw InvalidInput("ordering and matrix disagree on the number of variables");
  const std::size_t p = b.size();
  std::vector<bool> named(p, false);
  for (std::size_t t = 0; t < k.size(); ++t) {
    const std::size_t i = k[t];
    for (std::size_t j = 0; j < p; ++j) {
      if (!named[j] && b.b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0) return false;
    }
    named[i] = true;
  }
  return true;
}

}  // namespace mlingam
