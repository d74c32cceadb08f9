#pragma once

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pairest/clustering.hpp"
#include "pairest/rng.hpp"

namespace pairest {

/// Entity-cluster truth with sizes from a truncated discrete power law,
/// P(size = s) proportional to s^-size_exponent for s in [1, max_cluster_size].
struct ClusterTruthConfig {
  std::size_t mentions = 100000;
  double size_exponent = 2.3;
  std::size_t max_cluster_size = 50;
};

/// Mention ids "m0000001".., cluster ids "c0000001".. . The last cluster is
/// truncated so exactly `mentions` records are produced.
Clustering generate_cluster_truth(const ClusterTruthConfig& cfg, Rng& rng);

struct NoiseConfig {
  double first_name = 0.2;   // probability of one typo in the first name
  double last_name = 0.2;    // probability of one typo in the last name
  double birth_day = 0.1;    // probability of replacing the day
  double birth_month = 0.1;  // probability of replacing the month
  double birth_year = 0.1;   // probability of replacing the year's last digit
};

struct SyntheticPersonConfig {
  std::size_t population_size = 10000;
  double duplication_rate = 0.10;
  NoiseConfig noise;
  /// Name frequencies follow Zipf laws over the bundled pools.
  double first_name_zipf = 0.8;
  double last_name_zipf = 0.8;
};

/// Throws SchemaError naming the offending field.
void validate(const SyntheticPersonConfig& cfg);

struct PersonRecord {
  std::string mention_id;
  std::string first_name;
  std::string last_name;
  std::string birth_day;
  std::string birth_month;
  std::string birth_year;

  friend bool operator==(const PersonRecord&, const PersonRecord&) = default;
};

struct SyntheticPopulation {
  std::vector<PersonRecord> records;  // sorted by mention_id
  Clustering truth;
};

/// Every record after the first is, with probability duplication_rate, a
/// noisy copy of a uniformly chosen earlier entity; otherwise a new entity
/// with Zipf-distributed names and a uniform birth date in 1940-2005.
SyntheticPopulation generate_synthetic_population(const SyntheticPersonConfig& cfg, Rng& rng);

std::span<const std::string> first_name_pool();
std::span<const std::string> last_name_pool();

inline constexpr std::string_view kAttributeColumns[] = {
    "mention_id", "first_name", "last_name", "birth_day", "birth_month", "birth_year"};

void write_attributes_csv(std::ostream& out, std::span<const PersonRecord> records);
/// Columns are located by header name (extra columns ignored); a missing one
/// raises SchemaError.
std::vector<PersonRecord> parse_attributes_csv(std::string_view text, std::string_view source);
std::vector<PersonRecord> read_attributes_csv(const std::filesystem::path& path);

}  // namespace pairest
