#include "mlingam/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "mlingam/error.hpp"

namespace mlingam::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string location(const std::string& source, std::size_t line, std::size_t column) {
  return source + ":" + std::to_string(line) + ":" + std::to_string(column);
}

nlohmann::json triples(const Matrix& b, const std::vector<std::string>& names,
                       const std::function<bool(std::size_t, std::size_t)>& include) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      if (!include(ui, uj)) continue;
      out.push_back({{"effect", names[ui]}, {"cause", names[uj]}, {"value", b(i, j)}});
    }
  }
  return out;
}

std::string_view structure_sharing_name(StructureSharing s) {
  switch (s) {
    case StructureSharing::independent:
      return "independent";
    case StructureSharing::support:
      return "support";
    case StructureSharing::full:
      return "full";
  }
  return "independent";
}

std::string_view success_mode_name(SuccessMode m) { return m == SuccessMode::support ? "support" : "exact"; }

}  // namespace

std::string format_number(double value) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", value);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::vector<std::string> default_variable_names(std::size_t p) {
  std::vector<std::string> names;
  names.reserve(p);
  for (std::size_t i = 0; i < p; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

CsvTable parse_csv(const std::string& text, const std::string& source_name) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  CsvTable table;
  std::vector<std::vector<double>> rows;

  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (table.headers.empty()) {
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (fields[c].empty()) throw InvalidInput(location(source_name, line_no, c + 1) + ": empty column header");
        table.headers.emplace_back(fields[c]);
      }
      continue;
    }
    if (fields.size() != table.headers.size()) {
      throw InvalidInput(location(source_name, line_no, 1) + ": expected " + std::to_string(table.headers.size()) +
                         " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto f = fields[c];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), row[c]);
      if (f.empty() || ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(row[c])) {
        throw InvalidInput(location(source_name, line_no, c + 1) + ": non-numeric cell '" + std::string(f) + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (table.headers.empty()) throw InvalidInput(source_name + ": missing header row");
  if (rows.size() < 2) throw InvalidInput(source_name + ": need at least 2 data rows, found " + std::to_string(rows.size()));

  table.data.resize(static_cast<Eigen::Index>(table.headers.size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t c = 0; c < rows[t].size(); ++c) {
      table.data(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(t)) = rows[t][c];
    }
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string());
}

std::string format_csv(const std::vector<std::string>& headers, const Matrix& data) {
  if (static_cast<Eigen::Index>(headers.size()) != data.rows()) throw InvalidInput("header count does not match data");
  std::string out;
  for (std::size_t c = 0; c < headers.size(); ++c) {
    if (c) out += ',';
    out += headers[c];
  }
  out += '\n';
  for (Eigen::Index t = 0; t < data.cols(); ++t) {
    for (Eigen::Index c = 0; c < data.rows(); ++c) {
      if (c) out += ',';
      out += format_number(data(c, t));
    }
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InvalidInput("failed writing '" + path.string() + "'");
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& headers, const Matrix& data) {
  write_text(path, format_csv(headers, data));
}

std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

nlohmann::json kgv_params_to_json(const KgvParams& params, const std::vector<std::size_t>& sample_sizes) {
  nlohmann::json j{{"sigma", params.sigma}, {"eta", params.eta}};
  j["kappa"] = params.kappa ? nlohmann::json(*params.kappa) : nlohmann::json("auto: 2e-2 if n <= 1000 else 2e-3");
  j["max_rank"] = params.max_rank ? nlohmann::json(*params.max_rank) : nlohmann::json("auto: min(n, 100)");
  nlohmann::json resolved = nlohmann::json::array();
  std::vector<std::size_t> seen;
  for (std::size_t n : sample_sizes) {
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
    seen.push_back(n);
    resolved.push_back({{"n", n}, {"kappa", params.kappa_for(n)}, {"max_rank", params.max_rank_for(n)}});
  }
  j["resolved"] = std::move(resolved);
  return j;
}

nlohmann::json estimation_to_json(const EstimationResult& result, const EstimateRecord& record) {
  const auto& names = record.variables;
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "estimation_result";

  std::vector<std::size_t> sizes = record.sample_sizes;
  if (record.pooled) {
    std::size_t total = 0;
    for (std::size_t n : sizes) total += n;
    sizes.push_back(total);
  }
  doc["config"] = {{"inputs", record.inputs},
                   {"q", record.q},
                   {"weights_mode", record.weights_mode},
                   {"weights", record.weights.w},
                   {"pooled", record.pooled},
                   {"kgv", kgv_params_to_json(record.kgv, sizes)}};
  doc["variables"] = names;

  nlohmann::json ordering = nlohmann::json::array();
  for (std::size_t v : result.ordering.order()) ordering.push_back({{"index", v + 1}, {"name", names[v]}});
  doc["ordering"] = std::move(ordering);
  doc["early_stopped"] = result.early_stopped;

  nlohmann::json groups = nlohmann::json::array();
  for (std::size_t g = 0; g < result.b_matrices.size(); ++g) {
    const auto& est = result.b_matrices[g];
    nlohmann::json entry;
    entry["input"] = record.pooled ? std::string("pooled") : record.inputs[g];
    entry["n"] = record.pooled ? sizes.back() : record.sample_sizes[g];
    const auto present = [&est](std::size_t i, std::size_t j) { return est.present(i, j); };
    entry["b"] = triples(est.b, names, present);
    groups.push_back(std::move(entry));
  }
  doc["groups"] = std::move(groups);

  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : result.steps) {
    nlohmann::json scores = nlohmann::json::array();
    for (const auto& [v, s] : step.scores) scores.push_back({{"variable", names[v]}, {"score", s}});
    steps.push_back({{"selected", names[step.selected]}, {"scores", std::move(scores)}});
  }
  doc["steps"] = std::move(steps);
  doc["diagnostics"] = result.warnings;
  return doc;
}

nlohmann::json ground_truth_to_json(const GroundTruth& truth, const SimSpec& spec,
                                    const std::vector<std::string>& variables) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "ground_truth";
  doc["seed"] = truth.seed;
  doc["spec"] = {{"p", spec.p},
                 {"c", spec.num_groups()},
                 {"sample_sizes", spec.sample_sizes},
                 {"sparsity", truth.sparsity},
                 {"sparsity_source", spec.sparsity ? "explicit" : "auto"},
                 {"coefficient_range", {spec.coef_lo, spec.coef_hi}},
                 {"variance_range", {spec.variance_lo, spec.variance_hi}},
                 {"mean_variance", spec.mean_variance},
                 {"share_distributions", spec.share_distributions},
                 {"structure_sharing", structure_sharing_name(spec.structure_sharing)}};
  doc["variables"] = variables;
  nlohmann::json ordering = nlohmann::json::array();
  for (std::size_t v : truth.ordering.order()) ordering.push_back({{"index", v + 1}, {"name", variables[v]}});
  doc["ordering"] = std::move(ordering);

  nlohmann::json groups = nlohmann::json::array();
  for (std::size_t g = 0; g < truth.groups.size(); ++g) {
    const auto& gt = truth.groups[g];
    const auto nonzero = [&gt](std::size_t i, std::size_t j) {
      return gt.b.b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) != 0.0;
    };
    groups.push_back({{"group", g + 1},
                      {"n", spec.sample_sizes[g]},
                      {"b", triples(gt.b.b, variables, nonzero)},
                      {"distributions", gt.influences.distribution_ids},
                      {"variances", gt.influences.variances},
                      {"means", gt.means}});
  }
  doc["groups"] = std::move(groups);
  return doc;
}

nlohmann::json report_to_json(const BenchmarkReport& report) {
  const auto& cfg = report.config;
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "benchmark_report";
  doc["config"] = {{"preset", cfg.preset},
                   {"seed", cfg.spec.seed},
                   {"trials", cfg.trials},
                   {"q", cfg.q},
                   {"p", cfg.spec.p},
                   {"c", cfg.spec.num_groups()},
                   {"sample_sizes", cfg.spec.sample_sizes},
                   {"sparsity", cfg.spec.resolved_sparsity()},
                   {"sparsity_source", cfg.spec.sparsity ? "explicit" : "auto"},
                   {"coefficient_range", {cfg.spec.coef_lo, cfg.spec.coef_hi}},
                   {"variance_range", {cfg.spec.variance_lo, cfg.spec.variance_hi}},
                   {"mean_variance", cfg.spec.mean_variance},
                   {"share_distributions", cfg.spec.share_distributions},
                   {"structure_sharing", structure_sharing_name(cfg.spec.structure_sharing)},
                   {"weights_mode", "sample-size"},
                   {"success_mode", success_mode_name(cfg.success_mode)},
                   {"naive_centering", cfg.naive_centering == PooledCentering::global ? "global" : "per-group"},
                   {"kgv", kgv_params_to_json(cfg.kgv, cfg.spec.sample_sizes)}};

  nlohmann::json methods = nlohmann::json::object();
  for (Method m : kMethods) {
    const auto& s = report.summary[m];
    methods[std::string(method_name(m))] = {{"datasets", s.datasets},
                                            {"successes", s.successes},
                                            {"success_percent", s.success_percent},
                                            {"average_squared_error", s.average_squared_error},
                                            {"early_stops", s.early_stops},
                                            {"failed", s.failed}};
  }
  doc["methods"] = std::move(methods);
  doc["failed_trials"] = report.summary.failed_trials;

  nlohmann::json trials = nlohmann::json::array();
  for (const auto& t : report.trials) {
    nlohmann::json entry{{"trial", t.trial}, {"seed", t.seed}};
    if (t.error) entry["error"] = *t.error;
    for (Method m : kMethods) {
      nlohmann::json outcomes = nlohmann::json::array();
      for (const auto& o : t.outcomes[static_cast<std::size_t>(m)]) {
        outcomes.push_back({{"success", o.success},
                            {"early_stopped", o.early_stopped},
                            {"squared_error", o.squared_error ? nlohmann::json(*o.squared_error) : nlohmann::json()}});
      }
      entry[std::string(method_name(m))] = std::move(outcomes);
    }
    trials.push_back(std::move(entry));
  }
  doc["trials"] = std::move(trials);
  if (report.wall_clock_seconds) doc["wall_clock_seconds"] = *report.wall_clock_seconds;
  return doc;
}

std::string format_plot_data(const BenchmarkReport& report) {
  std::string out = "method,metric,value\n";
  for (Method m : kMethods) {
    const auto& s = report.summary[m];
    const std::string name(method_name(m));
    out += name + ",success_percent," + format_number(s.success_percent) + "\n";
    out += name + ",average_squared_error," + format_number(s.average_squared_error) + "\n";
  }
  return out;
}

}  // namespace mlingam::io
