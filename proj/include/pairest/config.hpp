#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "pairest/simulation.hpp"
#include "pairest/synthetic.hpp"

namespace pairest {

inline constexpr int kConfigSchemaVersion = 1;

/// `key = value` lines; `#` starts a comment, blank lines are ignored.
/// Malformed lines and repeated keys raise ParseError with the line number.
struct KeyValueEntry {
  std::string value;
  std::size_t line = 0;
};
std::map<std::string, KeyValueEntry> parse_key_values(std::string_view text,
                                                      std::string_view source);

/// Every config file carries `schema_version = 1` and a `kind` naming the
/// command it drives. Field problems are collected and reported together as
/// one SchemaError. Relative paths resolve against `base_dir`.
SimulationConfig parse_simulation_config(std::string_view text, std::string_view source,
                                         const std::filesystem::path& base_dir = {});
SimulationConfig read_simulation_config(const std::filesystem::path& path);

struct SynthConfig {
  SyntheticPersonConfig population;
  std::uint64_t seed = 1;
};
SynthConfig parse_synth_config(std::string_view text, std::string_view source);
SynthConfig read_synth_config(const std::filesystem::path& path);

BenchmarkConfig parse_figure1_config(std::string_view text, std::string_view source);
BenchmarkConfig read_figure1_config(const std::filesystem::path& path);

}  // namespace pairest
