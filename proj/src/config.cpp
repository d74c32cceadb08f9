#include "pairest/config.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <set>
#include <vector>

#include "pairest/csv.hpp"
#include "pairest/error.hpp"

namespace pairest {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// Reads typed fields from a parsed key-value map, collecting problems.
class FieldReader {
 public:
  FieldReader(std::string_view text, std::string_view source)
      : source_(source), entries_(parse_key_values(text, source)) {}

  void require_header(std::string_view kind) {
    const auto* version = find("schema_version");
    if (!version) {
      problem("schema_version", 0, "missing (expected " + std::to_string(kConfigSchemaVersion) + ")");
    } else if (version->value != std::to_string(kConfigSchemaVersion)) {
      problem("schema_version", version->line,
              "unsupported version \"" + version->value + "\" (expected " +
                  std::to_string(kConfigSchemaVersion) + ")");
    }
    const auto* k = find("kind");
    if (!k) {
      problem("kind", 0, "missing (expected \"" + std::string(kind) + "\")");
    } else if (k->value != kind) {
      problem("kind", k->line,
              "\"" + k->value + "\" does not match this command (expected \"" + std::string(kind) +
                  "\")");
    }
  }

  template <typename T>
  void number(std::string_view key, T& out) {
    const auto* e = find(key);
    if (!e) return;
    if (auto v = parse_number<T>(e->value)) {
      out = *v;
    } else {
      problem(key, e->line, "\"" + e->value + "\" is not a valid number");
    }
  }

  template <typename T>
  void number_list(std::string_view key, std::vector<T>& out) {
    const auto* e = find(key);
    if (!e) return;
    std::vector<T> values;
    for (auto item : split_list(e->value)) {
      if (auto v = parse_number<T>(item)) {
        values.push_back(*v);
      } else {
        problem(key, e->line, "\"" + std::string(item) + "\" is not a valid number");
        return;
      }
    }
    out = std::move(values);
  }

  const KeyValueEntry* string(std::string_view key) { return find(key); }

  void check(bool ok, std::string_view key, const std::string& msg) {
    if (ok) return;
    const auto* e = find(key);
    problem(key, e ? e->line : 0, msg);
  }

  void add(std::string problem) { problems_.push_back(std::move(problem)); }

  // Reports unknown keys and throws if anything went wrong.
  void finish() {
    for (const auto& [key, entry] : entries_) {
      if (!used_.count(key)) problem(key, entry.line, "unknown field");
    }
    if (problems_.empty()) return;
    std::string msg = "invalid config " + std::string(source_);
    for (const auto& p : problems_) msg += "\n  " + p;
    throw Error(ErrorCode::SchemaError, msg);
  }

 private:
  const KeyValueEntry* find(std::string_view key) {
    used_.insert(std::string(key));
    auto it = entries_.find(std::string(key));
    return it == entries_.end() ? nullptr : &it->second;
  }

  void problem(std::string_view key, std::size_t line, const std::string& msg) {
    std::string p = std::string(key);
    if (line) p += " (line " + std::to_string(line) + ")";
    problems_.push_back(p + ": " + msg);
  }

  std::string_view source_;
  std::map<std::string, KeyValueEntry> entries_;
  std::set<std::string> used_;
  std::vector<std::string> problems_;
};

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

void read_population(FieldReader& r, SyntheticPersonConfig& cfg) {
  r.number("population_size", cfg.population_size);
  r.number("duplication_rate", cfg.duplication_rate);
  r.number("noise_first_name", cfg.noise.first_name);
  r.number("noise_last_name", cfg.noise.last_name);
  r.number("noise_birth_day", cfg.noise.birth_day);
  r.number("noise_birth_month", cfg.noise.birth_month);
  r.number("noise_birth_year", cfg.noise.birth_year);
  r.number("first_name_zipf", cfg.first_name_zipf);
  r.number("last_name_zipf", cfg.last_name_zipf);
  r.check(cfg.population_size > 0, "population_size", "must be positive");
  r.check(cfg.duplication_rate >= 0.0 && cfg.duplication_rate < 1.0, "duplication_rate",
          "must be in [0, 1)");
  r.check(is_probability(cfg.noise.first_name), "noise_first_name", "must be in [0, 1]");
  r.check(is_probability(cfg.noise.last_name), "noise_last_name", "must be in [0, 1]");
  r.check(is_probability(cfg.noise.birth_day), "noise_birth_day", "must be in [0, 1]");
  r.check(is_probability(cfg.noise.birth_month), "noise_birth_month", "must be in [0, 1]");
  r.check(is_probability(cfg.noise.birth_year), "noise_birth_year", "must be in [0, 1]");
  r.check(std::isfinite(cfg.first_name_zipf) && cfg.first_name_zipf >= 0.0, "first_name_zipf",
          "must be a non-negative number");
  r.check(std::isfinite(cfg.last_name_zipf) && cfg.last_name_zipf >= 0.0, "last_name_zipf",
          "must be a non-negative number");
}

std::filesystem::path base_of(const std::filesystem::path& path) {
  return path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
}

}  // namespace

std::map<std::string, KeyValueEntry> parse_key_values(std::string_view text,
                                                      std::string_view source) {
  std::map<std::string, KeyValueEntry> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = text.substr(start, end - start);
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ParseError, where + "expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorCode::ParseError, where + "empty key");
    auto [it, inserted] = out.try_emplace(std::string(key), KeyValueEntry{std::string(value), line_no});
    if (!inserted) {
      throw Error(ErrorCode::ParseError, where + "key \"" + std::string(key) +
                                             "\" already set on line " +
                                             std::to_string(it->second.line));
    }
    if (end == text.size()) break;
  }
  return out;
}

SimulationConfig parse_simulation_config(std::string_view text, std::string_view source,
                                         const std::filesystem::path& base_dir) {
  FieldReader r(text, source);
  r.require_header("simulation");
  SimulationConfig cfg;
  if (const auto* f = r.string("truth_file")) {
    std::filesystem::path p = f->value;
    cfg.truth.file = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  r.number("truth_mentions", cfg.truth.synthetic.mentions);
  r.number("truth_size_exponent", cfg.truth.synthetic.size_exponent);
  r.number("truth_max_cluster_size", cfg.truth.synthetic.max_cluster_size);
  r.number_list("misattribution_rates", cfg.misattribution_rates);
  r.number_list("sample_sizes", cfg.sample_sizes);
  r.number("repetitions", cfg.repetitions);
  r.number("master_seed", cfg.master_seed);
  if (const auto* e = r.string("estimators")) {
    std::vector<SimEstimator> names;
    bool ok = true;
    for (auto item : split_list(e->value)) {
      try {
        names.push_back(parse_sim_estimator(item));
      } catch (const Error& err) {
        r.check(false, "estimators", err.what());
        ok = false;
      }
    }
    if (ok) cfg.estimators = std::move(names);
  }
  for (const auto& p : config_problems(cfg)) r.add(p);
  r.finish();
  return cfg;
}

SimulationConfig read_simulation_config(const std::filesystem::path& path) {
  return parse_simulation_config(read_file(path), path.string(), base_of(path));
}

SynthConfig parse_synth_config(std::string_view text, std::string_view source) {
  FieldReader r(text, source);
  r.require_header("synth");
  SynthConfig cfg;
  read_population(r, cfg.population);
  r.number("seed", cfg.seed);
  r.finish();
  return cfg;
}

SynthConfig read_synth_config(const std::filesystem::path& path) {
  return parse_synth_config(read_file(path), path.string());
}

BenchmarkConfig parse_figure1_config(std::string_view text, std::string_view source) {
  FieldReader r(text, source);
  r.require_header("figure1");
  BenchmarkConfig cfg;
  read_population(r, cfg.population);
  r.number("repetitions", cfg.repetitions);
  r.number("records_per_sample", cfg.records_per_sample);
  r.number("seed", cfg.seed);
  if (const auto* m = r.string("matcher")) {
    if (m->value == "rules") {
      cfg.matcher = MatcherKind::Rules;
    } else if (m->value == "truth") {
      cfg.matcher = MatcherKind::Truth;
    } else {
      r.check(false, "matcher", "\"" + m->value + "\" is not one of \"rules\", \"truth\"");
    }
  }
  r.check(cfg.repetitions > 0, "repetitions", "must be positive");
  r.check(cfg.records_per_sample > 0, "records_per_sample", "must be positive");
  r.finish();
  return cfg;
}

BenchmarkConfig read_figure1_config(const std::filesystem::path& path) {
  return parse_figure1_config(read_file(path), path.string());
}

}  // namespace pairest
