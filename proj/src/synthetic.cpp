#include "pairest/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "pairest/csv.hpp"
#include "pairest/error.hpp"

namespace pairest {

namespace detail {
extern const std::string_view kFirstNamePool;
extern const std::string_view kLastNamePool;
}  // namespace detail

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.emplace_back(line);
    start = end + 1;
  }
  return out;
}

std::string padded_id(char prefix, std::size_t value, int width) {
  std::string digits = std::to_string(value);
  std::string out(1, prefix);
  if (static_cast<int>(digits.size()) < width) out.append(width - digits.size(), '0');
  return out + digits;
}

int digits_for(std::size_t n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

char random_letter(Rng& rng) { return static_cast<char>('A' + rng.below(26)); }

void apply_typo(std::string& s, Rng& rng) {
  if (s.empty()) {
    s.push_back(random_letter(rng));
    return;
  }
  switch (rng.below(4)) {
    case 0: {  // substitution
      const auto pos = rng.below(s.size());
      char c = random_letter(rng);
      while (c == s[pos]) c = random_letter(rng);
      s[pos] = c;
      break;
    }
    case 1:  // deletion
      if (s.size() > 1) {
        s.erase(rng.below(s.size()), 1);
      } else {
        s.push_back(random_letter(rng));
      }
      break;
    case 2:  // insertion
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(rng.below(s.size() + 1)), random_letter(rng));
      break;
    default: {  // transposition
      if (s.size() < 2) {
        s.push_back(random_letter(rng));
        break;
      }
      const auto pos = rng.below(s.size() - 1);
      if (s[pos] == s[pos + 1]) {
        s[pos] = s[pos] == 'A' ? 'B' : 'A';
      } else {
        std::swap(s[pos], s[pos + 1]);
      }
      break;
    }
  }
}

// uniform in [lo, hi] but different from `current`
int other_value(int current, int lo, int hi, Rng& rng) {
  int v = current;
  while (v == current) v = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
  return v;
}

struct Person {
  std::string first;
  std::string last;
  int day = 1;
  int month = 1;
  int year = 1970;
};

Person noisy_copy(const Person& p, const NoiseConfig& noise, Rng& rng) {
  Person q = p;
  if (rng.bernoulli(noise.first_name)) apply_typo(q.first, rng);
  if (rng.bernoulli(noise.last_name)) apply_typo(q.last, rng);
  if (rng.bernoulli(noise.birth_day)) q.day = other_value(q.day, 1, 28, rng);
  if (rng.bernoulli(noise.birth_month)) q.month = other_value(q.month, 1, 12, rng);
  if (rng.bernoulli(noise.birth_year)) {
    const int decade = q.year - q.year % 10;
    q.year = decade + other_value(q.year % 10, 0, 9, rng);
  }
  return q;
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::span<const std::string> first_name_pool() {
  static const std::vector<std::string> pool = split_lines(detail::kFirstNamePool);
  return pool;
}

std::span<const std::string> last_name_pool() {
  static const std::vector<std::string> pool = split_lines(detail::kLastNamePool);
  return pool;
}

Clustering generate_cluster_truth(const ClusterTruthConfig& cfg, Rng& rng) {
  if (cfg.mentions == 0) throw Error(ErrorCode::InvalidInput, "truth needs at least one mention");
  if (cfg.max_cluster_size == 0) {
    throw Error(ErrorCode::InvalidInput, "max_cluster_size must be at least 1");
  }
  const auto weights = zipf_weights(cfg.max_cluster_size, cfg.size_exponent);
  const DiscreteSampler size_of(weights);

  std::vector<std::uint32_t> labels(cfg.mentions);
  std::vector<std::string> names;
  std::size_t filled = 0;
  while (filled < cfg.mentions) {
    const std::size_t size = std::min(size_of(rng) + 1, cfg.mentions - filled);
    const auto label = static_cast<std::uint32_t>(names.size());
    names.push_back(padded_id('c', names.size() + 1, 7));
    std::fill_n(labels.begin() + static_cast<std::ptrdiff_t>(filled), size, label);
    filled += size;
  }
  std::vector<std::string> ids(cfg.mentions);
  for (std::size_t m = 0; m < cfg.mentions; ++m) ids[m] = padded_id('m', m + 1, 7);
  return Clustering(std::make_shared<const Universe>(std::move(ids)), labels, std::move(names));
}

void validate(const SyntheticPersonConfig& cfg) {
  if (cfg.population_size == 0) {
    throw Error(ErrorCode::SchemaError, "population_size: must be at least 1");
  }
  if (!(cfg.duplication_rate >= 0.0 && cfg.duplication_rate < 1.0)) {
    throw Error(ErrorCode::SchemaError, "duplication_rate: must lie in [0, 1)");
  }
  const std::pair<const char*, double> probs[] = {
      {"noise.first_name", cfg.noise.first_name}, {"noise.last_name", cfg.noise.last_name},
      {"noise.birth_day", cfg.noise.birth_day},   {"noise.birth_month", cfg.noise.birth_month},
      {"noise.birth_year", cfg.noise.birth_year}};
  for (const auto& [name, p] : probs) {
    if (!is_probability(p)) {
      throw Error(ErrorCode::SchemaError, std::string(name) + ": must lie in [0, 1]");
    }
  }
  if (!(cfg.first_name_zipf >= 0.0) || !(cfg.last_name_zipf >= 0.0)) {
    throw Error(ErrorCode::SchemaError, "name zipf exponents must be non-negative");
  }
}

SyntheticPopulation generate_synthetic_population(const SyntheticPersonConfig& cfg, Rng& rng) {
  validate(cfg);
  const auto firsts = first_name_pool();
  const auto lasts = last_name_pool();
  const DiscreteSampler pick_first(zipf_weights(firsts.size(), cfg.first_name_zipf));
  const DiscreteSampler pick_last(zipf_weights(lasts.size(), cfg.last_name_zipf));

  const std::size_t n = cfg.population_size;
  std::vector<Person> entities;
  std::vector<Person> people;
  std::vector<std::uint32_t> entity_of;
  people.reserve(n);
  entity_of.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && rng.bernoulli(cfg.duplication_rate)) {
      const auto e = static_cast<std::uint32_t>(rng.below(entities.size()));
      people.push_back(noisy_copy(entities[e], cfg.noise, rng));
      entity_of.push_back(e);
    } else {
      Person p;
      p.first = firsts[pick_first(rng)];
      p.last = lasts[pick_last(rng)];
      p.day = 1 + static_cast<int>(rng.below(28));
      p.month = 1 + static_cast<int>(rng.below(12));
      p.year = 1940 + static_cast<int>(rng.below(66));
      entity_of.push_back(static_cast<std::uint32_t>(entities.size()));
      entities.push_back(p);
      people.push_back(std::move(p));
    }
  }

  // scatter generation order over the id space so duplicates are not adjacent
  std::vector<std::uint32_t> slot(n);
  std::iota(slot.begin(), slot.end(), 0U);
  shuffle(slot, rng);

  const int width = digits_for(n);
  SyntheticPopulation out;
  out.records.resize(n);
  std::vector<std::uint32_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = people[i];
    auto& r = out.records[slot[i]];
    r.mention_id = padded_id('r', slot[i] + 1, width);
    r.first_name = p.first;
    r.last_name = p.last;
    r.birth_day = std::to_string(p.day);
    r.birth_month = std::to_string(p.month);
    r.birth_year = std::to_string(p.year);
    labels[slot[i]] = entity_of[i];
  }
  std::vector<std::string> ids(n);
  for (std::size_t k = 0; k < n; ++k) ids[k] = out.records[k].mention_id;
  std::vector<std::string> names(entities.size());
  const int entity_width = digits_for(entities.size());
  for (std::size_t e = 0; e < entities.size(); ++e) names[e] = padded_id('e', e + 1, entity_width);
  out.truth = Clustering(std::make_shared<const Universe>(std::move(ids)), labels, std::move(names));
  return out;
}

void write_attributes_csv(std::ostream& out, std::span<const PersonRecord> records) {
  const std::vector<std::string> header(std::begin(kAttributeColumns), std::end(kAttributeColumns));
  write_csv_row(out, header);
  for (const auto& r : records) {
    const std::string row[] = {r.mention_id, r.first_name,  r.last_name,
                               r.birth_day,  r.birth_month, r.birth_year};
    write_csv_row(out, row);
  }
}

std::vector<PersonRecord> parse_attributes_csv(std::string_view text, std::string_view source) {
  const auto table = parse_csv(text, source);
  std::size_t column[std::size(kAttributeColumns)];
  for (std::size_t k = 0; k < std::size(kAttributeColumns); ++k) {
    const auto it = std::find(table.header.begin(), table.header.end(), kAttributeColumns[k]);
    if (it == table.header.end()) {
      throw Error(ErrorCode::SchemaError, std::string(source) + ": missing column '" +
                                              std::string(kAttributeColumns[k]) + "'");
    }
    column[k] = static_cast<std::size_t>(it - table.header.begin());
  }
  std::vector<PersonRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    const auto& f = row.fields;
    out.push_back({f[column[0]], f[column[1]], f[column[2]], f[column[3]], f[column[4]],
                   f[column[5]]});
  }
  return out;
}

std::vector<PersonRecord> read_attributes_csv(const std::filesystem::path& path) {
  return parse_attributes_csv(read_file(path), path.string());
}

}  // namespace pairest
