#include "mlingam/simgen.hpp"

#include <cmath>
#include <numeric>

#include "mlingam/error.hpp"

namespace mlingam {

double default_sparsity(std::size_t p) {
  if (p < 2) throw InvalidInput("default sparsity needs p >= 2");
  return static_cast<double>(p) / (2.0 * static_cast<double>(p - 1));
}

double SimSpec::resolved_sparsity() const {
  if (sparsity) return *sparsity;
  return p < 2 ? 1.0 : default_sparsity(p);
}

void SimSpec::validate() const {
  if (p < 1) throw InvalidInput("p must be at least 1");
  if (sample_sizes.empty()) throw InvalidInput("at least one group is required");
  for (std::size_t n : sample_sizes) {
    if (n < 2) throw InvalidInput("every group needs at least 2 samples");
  }
  const double s = resolved_sparsity();
  if (!(s > 0.0 && s <= 1.0)) throw InvalidInput("sparsity must lie in (0, 1]");
  if (!(coef_lo > 0.0 && coef_lo <= coef_hi)) throw InvalidInput("coefficient range must satisfy 0 < lo <= hi");
  if (!(variance_lo > 0.0 && variance_lo <= variance_hi)) throw InvalidInput("variance range must satisfy 0 < lo <= hi");
  if (!(mean_variance >= 0.0)) throw InvalidInput("mean variance must be nonnegative");
}

std::vector<Matrix> sample_structure(const SimSpec& spec, Rng& rng) {
  const auto p = static_cast<Eigen::Index>(spec.p);
  const double s = spec.resolved_sparsity();
  std::vector<Matrix> out;
  out.reserve(spec.num_groups());
  for (std::size_t g = 0; g < spec.num_groups(); ++g) {
    if (spec.structure_sharing == StructureSharing::full && g > 0) {
      out.push_back(out.front());
      continue;
    }
    const bool reuse_support = spec.structure_sharing == StructureSharing::support && g > 0;
    Matrix b = Matrix::Zero(p, p);
    for (Eigen::Index i = 1; i < p; ++i) {
      for (Eigen::Index j = 0; j < i; ++j) {
        if (reuse_support ? out.front()(i, j) == 0.0 : !bernoulli(rng, s)) continue;
        const double magnitude = uniform(rng, spec.coef_lo, spec.coef_hi);
        b(i, j) = bernoulli(rng, 0.5) ? magnitude : -magnitude;
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

InfluenceSamples sample_influences(const SimSpec& spec, const DistributionCatalog& catalog, Rng& rng) {
  const std::size_t p = spec.p;
  const std::size_t c = spec.num_groups();
  const auto pick = [&] {
    return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(catalog.size())) % catalog.size();
  };
  std::vector<std::size_t> shared(p);
  if (spec.share_distributions) {
    for (auto& d : shared) d = pick();
  }

  InfluenceSamples out;
  out.samples.reserve(c);
  out.specs.reserve(c);
  for (std::size_t g = 0; g < c; ++g) {
    const auto n = static_cast<Eigen::Index>(spec.sample_sizes[g]);
    ExternalInfluenceSpec influence;
    Matrix e(static_cast<Eigen::Index>(p), n);
    for (std::size_t i = 0; i < p; ++i) {
      const Distribution& dist = catalog[spec.share_distributions ? shared[i] : pick()];
      const double variance = uniform(rng, spec.variance_lo, spec.variance_hi);
      const double scale = std::sqrt(variance);
      for (Eigen::Index t = 0; t < n; ++t) e(static_cast<Eigen::Index>(i), t) = scale * dist.sample(rng);
      influence.distribution_ids.push_back(dist.id);
      influence.variances.push_back(variance);
    }
    out.samples.push_back(std::move(e));
    out.specs.push_back(std::move(influence));
  }
  return out;
}

Simulation generate(const SimSpec& spec, const DistributionCatalog& catalog) {
  Rng rng(spec.seed);
  return generate(spec, rng, catalog);
}

Simulation generate(const SimSpec& spec, Rng& rng, const DistributionCatalog& catalog) {
  spec.validate();
  const std::size_t p = spec.p;
  const std::size_t c = spec.num_groups();
  const auto pi = static_cast<Eigen::Index>(p);

  const std::vector<Matrix> structure = sample_structure(spec, rng);
  const InfluenceSamples influences = sample_influences(spec, catalog, rng);

  std::vector<std::vector<double>> means(c, std::vector<double>(p));
  const double mean_sd = std::sqrt(spec.mean_variance);
  for (auto& group_means : means) {
    for (auto& m : group_means) m = mean_sd * standard_normal(rng);
  }

  // Fisher-Yates; observed variable perm[t] is the t-th in causal order.
  std::vector<std::size_t> perm(p);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t t = p; t > 1; --t) {
    const auto r = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(t)) % t;
    std::swap(perm[t - 1], perm[r]);
  }

  Simulation sim;
  sim.truth.ordering = CausalOrdering(perm, p);
  sim.truth.sparsity = spec.resolved_sparsity();
  sim.truth.seed = spec.seed;
  sim.data.reserve(c);
  sim.truth.groups.reserve(c);

  for (std::size_t g = 0; g < c; ++g) {
    const Matrix& b_causal = structure[g];
    const Matrix& e = influences.samples[g];
    const Eigen::Index n = e.cols();

    Matrix x_causal(pi, n);
    for (Eigen::Index i = 0; i < pi; ++i) {
      x_causal.row(i) = e.row(i);
      for (Eigen::Index j = 0; j < i; ++j) {
        if (b_causal(i, j) != 0.0) x_causal.row(i) += b_causal(i, j) * x_causal.row(j);
      }
    }

    Matrix x(pi, n);
    Matrix b = Matrix::Zero(pi, pi);
    GroupTruth truth;
    truth.influences.distribution_ids.resize(p);
    truth.influences.variances.resize(p);
    truth.means = means[g];
    for (std::size_t t = 0; t < p; ++t) {
      const auto obs = static_cast<Eigen::Index>(perm[t]);
      x.row(obs) = x_causal.row(static_cast<Eigen::Index>(t)).array() + means[g][perm[t]];
      truth.influences.distribution_ids[perm[t]] = influences.specs[g].distribution_ids[t];
      truth.influences.variances[perm[t]] = influences.specs[g].variances[t];
      for (std::size_t s = 0; s < t; ++s) {
        b(obs, static_cast<Eigen::Index>(perm[s])) = b_causal(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s));
      }
    }
    truth.b = ConnectionMatrix(std::move(b));
    sim.truth.groups.push_back(std::move(truth));
    sim.data.emplace_back(std::move(x), g);
  }
  return sim;
}

}  // namespace mlingam
