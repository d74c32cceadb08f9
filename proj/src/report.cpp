#include "pairest/report.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "pairest/csv.hpp"
#include "pairest/error.hpp"

namespace pairest {

std::string_view version() noexcept { return "0.1.0"; }

std::string format_double(double x) {
  if (!std::isfinite(x)) return "NA";
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error(ErrorCode::Internal, "cannot format number");
  return std::string(buf, ptr);
}

nlohmann::json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

nlohmann::json json_number(const std::optional<double>& x) {
  return x ? json_number(*x) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const SimulationConfig& cfg) {
  nlohmann::json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["kind"] = "simulation";
  if (!cfg.truth.file.empty()) {
    j["truth_file"] = cfg.truth.file.generic_string();
  } else {
    j["truth_mentions"] = cfg.truth.synthetic.mentions;
    j["truth_size_exponent"] = cfg.truth.synthetic.size_exponent;
    j["truth_max_cluster_size"] = cfg.truth.synthetic.max_cluster_size;
  }
  j["misattribution_rates"] = cfg.misattribution_rates;
  j["sample_sizes"] = cfg.sample_sizes;
  j["repetitions"] = cfg.repetitions;
  auto& names = j["estimators"] = nlohmann::json::array();
  for (auto e : cfg.estimators) names.push_back(to_string(e));
  j["master_seed"] = cfg.master_seed;
  return j;
}

nlohmann::json to_json(const SyntheticPersonConfig& cfg) {
  return {
      {"population_size", cfg.population_size},
      {"duplication_rate", cfg.duplication_rate},
      {"noise_first_name", cfg.noise.first_name},
      {"noise_last_name", cfg.noise.last_name},
      {"noise_birth_day", cfg.noise.birth_day},
      {"noise_birth_month", cfg.noise.birth_month},
      {"noise_birth_year", cfg.noise.birth_year},
      {"first_name_zipf", cfg.first_name_zipf},
      {"last_name_zipf", cfg.last_name_zipf},
  };
}

nlohmann::json to_json(const SynthConfig& cfg) {
  auto j = to_json(cfg.population);
  j["schema_version"] = kConfigSchemaVersion;
  j["kind"] = "synth";
  j["seed"] = cfg.seed;
  return j;
}

nlohmann::json to_json(const BenchmarkConfig& cfg) {
  auto j = to_json(cfg.population);
  j["schema_version"] = kConfigSchemaVersion;
  j["kind"] = "figure1";
  j["matcher"] = cfg.matcher == MatcherKind::Rules ? "rules" : "truth";
  j["repetitions"] = cfg.repetitions;
  j["records_per_sample"] = cfg.records_per_sample;
  j["seed"] = cfg.seed;
  return j;
}

void write_simulation_csv(std::ostream& out, const SimulationReport& report) {
  out << "estimator,rate,sample_size,repetitions,successes,failures,bias,rmse,mean_estimate,"
         "oracle_precision,oracle_recall\n";
  for (const auto& c : report.cells) {
    const auto& s = c.summary;
    out << to_string(c.estimator) << ',' << format_double(c.rate) << ',' << c.sample_size << ','
        << c.estimates.size() << ',' << s.successes << ',' << (c.estimates.size() - s.successes)
        << ',' << format_double(s.bias) << ',' << format_double(s.rmse) << ','
        << format_double(s.mean_estimate) << ',' << format_double(c.oracle_precision_mean) << ','
        << format_double(c.oracle_recall_mean) << '\n';
  }
}

nlohmann::json simulation_json(const SimulationReport& report) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["version"] = version();
  j["config"] = to_json(report.config);
  j["truth"] = {{"mentions", report.truth_mentions}, {"clusters", report.truth_clusters}};
  auto& cells = j["cells"] = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json cell;
    cell["estimator"] = to_string(c.estimator);
    cell["metric"] = to_string(metric_of(c.estimator));
    cell["rate"] = c.rate;
    cell["sample_size"] = c.sample_size;
    cell["bias"] = json_number(c.summary.bias);
    cell["rmse"] = json_number(c.summary.rmse);
    cell["mean_estimate"] = json_number(c.summary.mean_estimate);
    cell["successes"] = c.summary.successes;
    cell["failures"] = c.summary.failures;
    cell["oracle_precision_mean"] = c.oracle_precision_mean;
    cell["oracle_recall_mean"] = c.oracle_recall_mean;
    auto& est = cell["estimates"] = nlohmann::json::array();
    for (const auto& e : c.estimates) est.push_back(json_number(e));
    cell["oracle"] = c.oracle;
    cells.push_back(std::move(cell));
  }
  return j;
}

void write_figure1_csv(std::ostream& out, const BenchmarkResult& result) {
  out << "rep,naive_precision,adjusted_precision,oracle_precision\n";
  const std::string oracle = format_double(result.oracle.precision);
  for (std::size_t i = 0; i < result.naive.size(); ++i) {
    out << (i + 1) << ',' << (result.naive[i] ? format_double(*result.naive[i]) : "NA") << ','
        << (result.adjusted[i] ? format_double(*result.adjusted[i]) : "NA") << ',' << oracle
        << '\n';
  }
}

nlohmann::json figure1_summary_json(const BenchmarkResult& result, const BenchmarkConfig& cfg) {
  auto summary = [](const ErrorSummary& s) {
    return nlohmann::json{{"mean", json_number(s.mean_estimate)},
                          {"bias", json_number(s.bias)},
                          {"rmse", json_number(s.rmse)},
                          {"successes", s.successes},
                          {"failures", s.failures}};
  };
  return {{"schema_version", kReportSchemaVersion},
          {"version", version()},
          {"config", to_json(cfg)},
          {"records", result.records},
          {"truth_clusters", result.truth_clusters},
          {"oracle_precision", result.oracle.precision},
          {"oracle_recall", result.oracle.recall},
          {"naive", summary(result.naive_summary)},
          {"adjusted", summary(result.adjusted_summary)}};
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::Internal, "SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs.emplace_back(path.generic_string(), sha256_file(path));
}

void RunManifest::add_output(const std::filesystem::path& path) {
  outputs.emplace_back(path.generic_string(), sha256_file(path));
}

nlohmann::json RunManifest::to_json() const {
  auto files = [](const std::vector<std::pair<std::string, std::string>>& xs) {
    auto arr = nlohmann::json::array();
    for (const auto& [path, digest] : xs) arr.push_back({{"path", path}, {"sha256", digest}});
    return arr;
  };
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  j["version"] = version();
  j["config"] = config;
  j["inputs"] = files(inputs);
  j["outputs"] = files(outputs);
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  j["started_at"] = started_at;
  j["finished_at"] = finished_at;
  return j;
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
}

}  // namespace pairest
