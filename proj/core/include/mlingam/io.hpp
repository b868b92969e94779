#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mlingam/bench.hpp"
#include "mlingam/discover.hpp"
#include "mlingam/model.hpp"
#include "mlingam/simgen.hpp"

namespace mlingam::io {

inline constexpr int kSchemaVersion = 1;

/// Header row of variable names, then one sample per row. Data is stored as
/// p x n (variables as rows).
struct CsvTable {
  std::vector<std::string> headers;
  Matrix data;
};

/// Throws InvalidInput naming the file, line and column on malformed input.
CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text, const std::string& source_name);

/// Doubles are written with 17 significant digits.
std::string format_csv(const std::vector<std::string>& headers, const Matrix& data);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& headers, const Matrix& data);

std::string format_number(double value);

/// x1..xp
std::vector<std::string> default_variable_names(std::size_t p);

struct EstimateRecord {
  std::vector<std::string> inputs;
  std::vector<std::string> variables;
  std::vector<std::size_t> sample_sizes;
  std::size_t q = 0;
  std::string weights_mode;
  GroupWeights weights;
  KgvParams kgv;
  /// Pooled naive mode; each input is then one block of a single dataset.
  bool pooled = false;
};

nlohmann::json estimation_to_json(const EstimationResult& result, const EstimateRecord& record);
nlohmann::json ground_truth_to_json(const GroundTruth& truth, const SimSpec& spec,
                                    const std::vector<std::string>& variables);
nlohmann::json kgv_params_to_json(const KgvParams& params, const std::vector<std::size_t>& sample_sizes);
nlohmann::json report_to_json(const BenchmarkReport& report);

/// Tidy (method, metric, value) rows for external plotting.
std::string format_plot_data(const BenchmarkReport& report);

/// Serialized JSON text with a trailing newline, stable across runs.
std::string dump(const nlohmann::json& doc);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace mlingam::io
