#include "pairest/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pairest/error.hpp"

namespace pairest {

namespace {

[[noreturn]] void parse_fail(std::string_view source, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError,
              std::string(source) + ":" + std::to_string(line) + ": " + what);
}

// Returns the 1-based line of the first invalid UTF-8 sequence, or 0.
std::size_t first_invalid_utf8_line(std::string_view text) {
  std::size_t line = 1;
  std::size_t i = 0;
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
  while (i < text.size()) {
    const unsigned char c = byte(i);
    if (c == '\n') ++line;
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return line;
    }
    if (i + len > text.size()) return line;
    for (std::size_t k = 1; k < len; ++k) {
      if ((byte(i + k) & 0xC0) != 0x80) return line;
      cp = (cp << 6) | (byte(i + k) & 0x3F);
    }
    // overlong forms, surrogates, out of range
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      return line;
    }
    i += len;
  }
  return 0;
}

}  // namespace

CsvTable parse_csv(std::string_view text, std::string_view source) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  if (auto bad = first_invalid_utf8_line(text)) parse_fail(source, bad, "invalid UTF-8");

  std::vector<CsvRow> records;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    CsvRow row;
    row.line = line;
    std::string field;
    bool row_done = false;
    while (!row_done) {
      field.clear();
      if (i < text.size() && text[i] == '"') {
        ++i;
        bool closed = false;
        while (i < text.size()) {
          const char c = text[i];
          if (c == '"') {
            if (i + 1 < text.size() && text[i + 1] == '"') {
              field.push_back('"');
              i += 2;
            } else {
              ++i;
              closed = true;
              break;
            }
          } else {
            if (c == '\n') ++line;
            field.push_back(c);
            ++i;
          }
        }
        if (!closed) parse_fail(source, row.line, "unterminated quoted field");
        if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          parse_fail(source, line, "unexpected character after closing quote");
        }
      } else {
        while (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
          if (text[i] == '"') parse_fail(source, line, "quote inside unquoted field");
          field.push_back(text[i]);
          ++i;
        }
      }
      row.fields.push_back(field);
      if (i >= text.size()) {
        row_done = true;
      } else if (text[i] == ',') {
        ++i;
      } else {
        if (text[i] == '\r') {
          ++i;
          if (i >= text.size() || text[i] != '\n') parse_fail(source, line, "bare carriage return");
        }
        ++i;
        ++line;
        row_done = true;
      }
    }
    if (row.fields.size() == 1 && row.fields[0].empty()) {
      parse_fail(source, row.line, "empty line");
    }
    records.push_back(std::move(row));
  }

  CsvTable table;
  if (records.empty()) parse_fail(source, 1, "missing header line");
  table.header = std::move(records.front().fields);
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].fields.size() != table.header.size()) {
      parse_fail(source, records[r].line,
                 "expected " + std::to_string(table.header.size()) + " fields, found " +
                     std::to_string(records[r].fields.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  return parse_csv(read_file(path), path.string());
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << '\n';
}

MembershipTable parse_membership_csv(std::string_view text, std::string_view source,
                                     bool allow_weight) {
  auto table = parse_csv(text, source);
  const bool has_weight = table.header.size() == 3 && table.header[2] == "weight";
  const bool header_ok = table.header.size() >= 2 && table.header[0] == "mention_id" &&
                         table.header[1] == "cluster_id" &&
                         (table.header.size() == 2 || (allow_weight && has_weight));
  if (!header_ok) {
    parse_fail(source, 1,
               allow_weight ? "header must be 'mention_id,cluster_id[,weight]'"
                            : "header must be 'mention_id,cluster_id'");
  }

  // sort row indices by mention id to detect duplicates with both line numbers
  std::vector<std::size_t> order(table.rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return table.rows[a].fields[0] < table.rows[b].fields[0];
  });

  std::vector<MembershipEntry> entries;
  entries.reserve(order.size());
  std::vector<double> weights;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& row = table.rows[order[k]];
    if (row.fields[0].empty()) parse_fail(source, row.line, "empty mention_id");
    if (row.fields[1].empty()) parse_fail(source, row.line, "empty cluster_id");
    if (k > 0 && table.rows[order[k - 1]].fields[0] == row.fields[0]) {
      throw Error(ErrorCode::DuplicateMention,
                  std::string(source) + ":" + std::to_string(row.line) + ": mention '" +
                      row.fields[0] + "' already assigned on line " +
                      std::to_string(table.rows[order[k - 1]].line));
    }
    entries.push_back({row.fields[0], row.fields[1]});
    if (has_weight) {
      const auto& w = row.fields[2];
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), value);
      if (ec != std::errc{} || ptr != w.data() + w.size() || !std::isfinite(value) ||
          value <= 0.0) {
        parse_fail(source, row.line, "weight must be a positive finite number, got '" + w + "'");
      }
      weights.push_back(value);
    }
  }

  MembershipTable out;
  out.membership = MembershipVector(std::move(entries));
  if (has_weight) out.weights = std::move(weights);
  return out;
}

MembershipTable read_membership_csv(const std::filesystem::path& path, bool allow_weight) {
  return parse_membership_csv(read_file(path), path.string(), allow_weight);
}

void write_membership_csv(std::ostream& out, const MembershipVector& mv) {
  out << "mention_id,cluster_id\n";
  for (const auto& e : mv) {
    out << csv_field(e.mention_id) << ',' << csv_field(e.cluster_id) << '\n';
  }
}

}  // namespace pairest
