#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pairest/membership.hpp"

namespace pairest {

struct CsvRow {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;
};

/// RFC-4180 reader. Accepts LF or CRLF, a leading UTF-8 BOM, quoted fields
/// with embedded separators/newlines. Rejects invalid UTF-8, ragged rows and
/// unterminated quotes with ParseError naming `source` and the line.
CsvTable parse_csv(std::string_view text, std::string_view source = "<input>");
CsvTable read_csv_file(const std::filesystem::path& path);

std::string csv_field(std::string_view field);
void write_csv_row(std::ostream& out, std::span<const std::string> fields);

/// Membership CSV, optionally with a third `weight` column.
struct MembershipTable {
  MembershipVector membership;
  /// Aligned with membership.entries() when the file has a weight column.
  std::optional<std::vector<double>> weights;
};

/// Header must be `mention_id,cluster_id` or, when `allow_weight` is set,
/// optionally `mention_id,cluster_id,weight`.
MembershipTable parse_membership_csv(std::string_view text, std::string_view source,
                                     bool allow_weight = false);
MembershipTable read_membership_csv(const std::filesystem::path& path, bool allow_weight = false);

void write_membership_csv(std::ostream& out, const MembershipVector& mv);

std::string read_file(const std::filesystem::path& path);

}  // namespace pairest
