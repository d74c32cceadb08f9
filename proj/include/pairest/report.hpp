#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pairest/config.hpp"
#include "pairest/simulation.hpp"

namespace pairest {

inline constexpr int kReportSchemaVersion = 1;

std::string_view version() noexcept;

/// Shortest decimal that round-trips; "NA" for NaN and infinities.
std::string format_double(double x);
/// JSON number, or null for non-finite values.
nlohmann::json json_number(double x);
nlohmann::json json_number(const std::optional<double>& x);

nlohmann::json to_json(const SimulationConfig& cfg);
nlohmann::json to_json(const SyntheticPersonConfig& cfg);
nlohmann::json to_json(const SynthConfig& cfg);
nlohmann::json to_json(const BenchmarkConfig& cfg);

/// One row per estimator x rate x sample size, in report order.
void write_simulation_csv(std::ostream& out, const SimulationReport& report);
/// Config echo, truth summary and every cell with its full estimate list.
nlohmann::json simulation_json(const SimulationReport& report);

/// Columns rep, naive_precision, adjusted_precision, oracle_precision.
void write_figure1_csv(std::ostream& out, const BenchmarkResult& result);
nlohmann::json figure1_summary_json(const BenchmarkResult& result, const BenchmarkConfig& cfg);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Current UTC time as 2024-01-31T12:00:00Z.
std::string utc_timestamp();

struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::pair<std::string, std::string>> inputs;   // path, sha256
  std::vector<std::pair<std::string, std::string>> outputs;  // path, sha256
  std::optional<std::uint64_t> seed;
  std::string started_at;
  std::string finished_at;

  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

/// Writes `text` to `path`, throwing InvalidInput if the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pairest
