#include "mlingam/distributions.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "mlingam/default_catalog.hpp"
#include "mlingam/error.hpp"

namespace mlingam {

namespace {

DistributionKind parse_kind(const std::string& name) {
  if (name == "student_t") return DistributionKind::student_t;
  if (name == "laplace") return DistributionKind::laplace;
  if (name == "uniform") return DistributionKind::uniform;
  if (name == "exponential") return DistributionKind::exponential;
  if (name == "gaussian_mixture") return DistributionKind::gaussian_mixture;
  if (name == "laplace_mixture") return DistributionKind::laplace_mixture;
  throw InvalidInput("unknown distribution kind '" + name + "'");
}

bool is_mixture(DistributionKind kind) {
  return kind == DistributionKind::gaussian_mixture || kind == DistributionKind::laplace_mixture;
}

// Laplace with standard deviation sd: scale b = sd / sqrt(2).
double laplace_draw(Rng& rng, double mean, double sd) {
  const double u = uniform01(rng) - 0.5;
  const double b = sd / std::numbers::sqrt2;
  const double magnitude = -b * std::log1p(-2.0 * std::abs(u));
  return mean + (u < 0.0 ? -magnitude : magnitude);
}

}  // namespace

double Distribution::raw_mean() const {
  switch (kind) {
    case DistributionKind::student_t:
    case DistributionKind::laplace:
      return 0.0;
    case DistributionKind::uniform:
      return 0.5;
    case DistributionKind::exponential:
      return 1.0;
    case DistributionKind::gaussian_mixture:
    case DistributionKind::laplace_mixture: {
      double mu = 0.0;
      for (const auto& c : components) mu += c.weight * c.mean;
      return mu;
    }
  }
  return 0.0;
}

double Distribution::raw_variance() const {
  switch (kind) {
    case DistributionKind::student_t:
      return static_cast<double>(dof) / static_cast<double>(dof - 2);
    case DistributionKind::laplace:
    case DistributionKind::exponential:
      return 1.0;
    case DistributionKind::uniform:
      return 1.0 / 12.0;
    case DistributionKind::gaussian_mixture:
    case DistributionKind::laplace_mixture: {
      const double mu = raw_mean();
      double second = 0.0;
      for (const auto& c : components) second += c.weight * (c.sd * c.sd + c.mean * c.mean);
      return second - mu * mu;
    }
  }
  return 1.0;
}

double Distribution::sample_raw(Rng& rng) const {
  switch (kind) {
    case DistributionKind::student_t: {
      const double z = standard_normal(rng);
      double chi2 = 0.0;
      for (int k = 0; k < dof; ++k) {
        const double w = standard_normal(rng);
        chi2 += w * w;
      }
      return z / std::sqrt(chi2 / static_cast<double>(dof));
    }
    case DistributionKind::laplace:
      return laplace_draw(rng, 0.0, 1.0);
    case DistributionKind::uniform:
      return uniform01(rng);
    case DistributionKind::exponential:
      return -std::log1p(-uniform01(rng));
    case DistributionKind::gaussian_mixture:
    case DistributionKind::laplace_mixture: {
      const double u = uniform01(rng);
      std::size_t pick = components.size() - 1;
      double cumulative = 0.0;
      for (std::size_t i = 0; i < components.size(); ++i) {
        cumulative += components[i].weight;
        if (u < cumulative) {
          pick = i;
          break;
        }
      }
      const auto& c = components[pick];
      if (kind == DistributionKind::laplace_mixture) return laplace_draw(rng, c.mean, c.sd);
      return c.mean + c.sd * standard_normal(rng);
    }
  }
  return 0.0;
}

double Distribution::sample(Rng& rng) const { return (sample_raw(rng) - raw_mean()) / std::sqrt(raw_variance()); }

DistributionCatalog::DistributionCatalog(std::vector<Distribution> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidInput("distribution catalog is empty");
}

DistributionCatalog DistributionCatalog::from_json(const nlohmann::json& doc) {
  std::vector<Distribution> entries;
  try {
    for (const auto& item : doc.at("distributions")) {
      Distribution d;
      d.id = item.at("id").get<std::string>();
      d.kind = parse_kind(item.at("kind").get<std::string>());
      if (d.kind == DistributionKind::student_t) {
        d.dof = item.at("dof").get<int>();
        if (d.dof < 3) throw InvalidInput("distribution '" + d.id + "': Student-t needs dof >= 3 for finite variance");
      }
      if (is_mixture(d.kind)) {
        double total = 0.0;
        for (const auto& c : item.at("components")) {
          MixtureComponent comp{c.at("weight").get<double>(), c.at("mean").get<double>(), c.at("sd").get<double>()};
          if (!(comp.weight > 0.0) || !(comp.sd > 0.0)) {
            throw InvalidInput("distribution '" + d.id + "': component weight and sd must be positive");
          }
          total += comp.weight;
          d.components.push_back(comp);
        }
        if (d.components.empty() || std::abs(total - 1.0) > 1e-9) {
          throw InvalidInput("distribution '" + d.id + "': mixture weights must sum to 1");
        }
      }
      entries.push_back(std::move(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed distribution catalog: ") + e.what());
  }
  return DistributionCatalog(std::move(entries));
}

DistributionCatalog DistributionCatalog::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open distribution catalog '" + path + "'");
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("distribution catalog '" + path + "': " + e.what());
  }
}

const DistributionCatalog& DistributionCatalog::builtin() {
  static const DistributionCatalog catalog = from_json(nlohmann::json::parse(kDefaultCatalogJson));
  return catalog;
}

const Distribution& DistributionCatalog::find(std::string_view id) const {
  for (const auto& d : entries_) {
    if (d.id == id) return d;
  }
  throw InvalidInput("unknown distribution '" + std::string(id) + "'");
}

}  // namespace mlingam
