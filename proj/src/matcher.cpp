#include "pairest/matcher.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

#include "pairest/error.hpp"
#include "pairest/union_find.hpp"

namespace pairest {

namespace {

// Fields joined with a separator that cannot occur in UTF-8 text.
std::string rule_key(const std::string& x, const std::string& y, const std::string& z) {
  std::string key;
  key.reserve(x.size() + y.size() + z.size() + 2);
  key += x;
  key += '\xff';
  key += y;
  key += '\xff';
  key += z;
  return key;
}

}  // namespace

Clustering rule_based_matcher(std::span<const PersonRecord> records) {
  const std::size_t n = records.size();
  // work in sorted mention order so indices match the universe
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return records[a].mention_id < records[b].mention_id;
  });
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = records[order[i]].mention_id;
  auto universe = std::make_shared<const Universe>(std::move(ids));

  // records sharing a rule key are linked; joining each to the key's first
  // holder yields the same components as joining every linked pair
  UnionFind uf(n);
  std::unordered_map<std::string, std::uint32_t> by_key[3];
  for (auto& table : by_key) table.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto& r = records[order[i]];
    const std::string keys[3] = {rule_key(r.first_name, r.last_name, r.birth_year),
                                 rule_key(r.first_name, r.birth_day, r.birth_year),
                                 rule_key(r.last_name, r.birth_day, r.birth_year)};
    for (int k = 0; k < 3; ++k) {
      auto [it, inserted] = by_key[k].try_emplace(keys[k], i);
      if (!inserted) uf.unite(it->second, i);
    }
  }

  // label = smallest member's id; mentions are visited in increasing order
  std::vector<std::uint32_t> labels(n);
  std::vector<std::string> names;
  std::unordered_map<std::uint32_t, std::uint32_t> root_label;
  for (std::uint32_t i = 0; i < n; ++i) {
    auto [it, inserted] = root_label.try_emplace(uf.find(i), static_cast<std::uint32_t>(names.size()));
    if (inserted) names.push_back(universe->id(i));
    labels[i] = it->second;
  }
  return Clustering(std::move(universe), labels, std::move(names));
}

}  // namespace pairest
