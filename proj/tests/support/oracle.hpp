#pragma once

// Brute-force reference computations shared by the unit and acceptance
// tests. Everything here works from explicit sets of record pairs, never
// from the library's f/g or block-link helpers.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pairest/clustering.hpp"
#include "pairest/estimators.hpp"

namespace oracle {

using Labels = std::vector<int>;
using PairSet = std::set<std::pair<int, int>>;
using Rational = boost::multiprecision::cpp_rational;

inline PairSet links(const Labels& labels) {
  PairSet out;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(labels.size()); ++j) {
      if (labels[i] == labels[j]) out.emplace(i, j);
    }
  }
  return out;
}

inline PairSet intersect(const PairSet& a, const PairSet& b) {
  PairSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

struct PairCounts {
  std::size_t truth = 0, predicted = 0, common = 0;
  double precision() const { return double(common) / double(predicted); }
  double recall() const { return double(common) / double(truth); }
};

inline PairCounts count_pairs(const Labels& truth, const Labels& pred) {
  const auto t = links(truth);
  const auto p = links(pred);
  return {t.size(), p.size(), intersect(t, p).size()};
}

inline std::vector<std::string> mention_ids(int n) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) {
    std::string s = std::to_string(i);
    ids.push_back("m" + std::string(4 - s.size(), '0') + s);
  }
  return ids;
}

inline std::shared_ptr<const pairest::Universe> universe(int n) {
  return std::make_shared<const pairest::Universe>(mention_ids(n));
}

inline pairest::Clustering to_clustering(const Labels& labels,
                                         std::shared_ptr<const pairest::Universe> u) {
  std::map<int, std::uint32_t> dense;
  std::vector<std::string> names;
  std::vector<std::uint32_t> idx;
  for (int l : labels) {
    auto [it, inserted] = dense.try_emplace(l, static_cast<std::uint32_t>(names.size()));
    if (inserted) names.push_back("k" + std::to_string(l));
    idx.push_back(it->second);
  }
  return pairest::Clustering(std::move(u), idx, std::move(names));
}

inline Labels random_labels(std::mt19937_64& rng, int n, int k) {
  std::uniform_int_distribution<int> d(0, k - 1);
  Labels out(n);
  for (auto& x : out) x = d(rng);
  return out;
}

/// Members of each label, keyed by label.
inline std::map<int, std::vector<int>> groups(const Labels& labels) {
  std::map<int, std::vector<int>> out;
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) out[labels[i]].push_back(i);
  return out;
}

struct Metrics {
  double precision = 0.0, recall = 0.0;
};

/// Common links whose first record lies in `members`.
inline std::size_t common_within(const PairSet& common, const std::vector<int>& members) {
  std::set<int> m(members.begin(), members.end());
  std::size_t n = 0;
  for (const auto& [a, b] : common) n += m.count(a) && m.count(b);
  return n;
}

/// Record-sampling expectations for draw probabilities prob[i] (summing to 1).
inline Metrics lemma_record(const Labels& truth, const Labels& pred,
                            const std::vector<double>& prob) {
  const auto t = links(truth);
  const auto p = links(pred);
  const auto common = intersect(t, p);
  const auto g = groups(truth);
  double ep = 0, num = 0, den = 0;
  for (int i = 0; i < static_cast<int>(truth.size()); ++i) {
    const auto& c = g.at(truth[i]);
    const double size = double(c.size());
    const double f = double(common_within(common, c));
    ep += prob[i] * (f / double(p.size())) / (prob[i] * size);
    num += prob[i] * f / (size * prob[i]);
    den += prob[i] * (size - 1) / prob[i];
  }
  return {ep, 2 * num / den};
}

/// Cluster-sampling expectations with draw weights w(|c|), up to scale.
template <typename W>
Metrics lemma_cluster(const Labels& truth, const Labels& pred, W weight) {
  const auto t = links(truth);
  const auto p = links(pred);
  const auto common = intersect(t, p);
  const auto g = groups(truth);
  double total = 0;
  for (const auto& [label, c] : g) total += weight(c.size());
  double eg = 0, esize = 0, ef = 0, epairs = 0;
  for (const auto& [label, c] : g) {
    const double q = weight(c.size()) / total;
    const double w = weight(c.size());
    const double f = double(common_within(common, c));
    const double size = double(c.size());
    eg += q * (f / double(p.size())) / w;
    esize += q * size / w;
    ef += q * f / w;
    epairs += q * (size * (size - 1) / 2) / w;
  }
  return {double(truth.size()) * eg / esize, ef / epairs};
}

/// Block-sampling expectations; `block_of` maps each truth label to a block
/// id and blocks are drawn with weights w(records in block).
template <typename W>
Metrics lemma_block(const Labels& truth, const Labels& pred, const std::map<int, int>& block_of,
                    W weight) {
  const auto t = links(truth);
  const auto p = links(pred);
  std::map<int, std::set<int>> blocks;
  for (int i = 0; i < static_cast<int>(truth.size()); ++i) blocks[block_of.at(truth[i])].insert(i);
  double total = 0;
  for (const auto& [id, b] : blocks) total += weight(b.size());
  double ecommon = 0, elinks = 0, etruth = 0;
  for (const auto& [id, b] : blocks) {
    const double w = weight(b.size());
    const double q = w / total;
    std::size_t tb = 0, pb = 0, out = 0, common = 0;
    for (const auto& [x, y] : t) tb += b.count(x) && b.count(y);
    for (const auto& [x, y] : p) {
      const int inside = int(b.count(x)) + int(b.count(y));
      pb += inside == 2;
      out += inside == 1;
      common += inside == 2 && t.count({x, y});
    }
    ecommon += q * double(common) / w;
    elinks += q * (double(pb) + 0.5 * double(out)) / w;
    etruth += q * double(tb) / w;
  }
  return {ecommon / elinks, ecommon / etruth};
}

/// Bias-corrected ratio and its variance, written exactly as the textbook
/// formula in exact rational arithmetic.
struct RatioOracle {
  Rational value, variance;
};

inline RatioOracle ratio_oracle(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                Rational theta) {
  const auto n = static_cast<std::int64_t>(a.size());
  Rational abar = 0, bbar = 0;
  for (auto x : a) abar += x;
  for (auto x : b) bbar += x;
  abar /= n;
  bbar /= n;
  Rational corr = 0, sq = 0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    corr += (a[s] / abar) * (b[s] / bbar - a[s] / abar);
    const Rational d = a[s] / abar - b[s] / bbar;
    sq += d * d;
  }
  const Rational k = theta / (n * (n - 1));
  const Rational r = bbar / abar;
  return {r * (1 + k * corr), r * r * k * sq};
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline std::string to_string(const Rational& r) { return r.str(); }

/// Draws a truth/prediction pair on n mentions with at least one true link
/// and one predicted link.
inline std::pair<Labels, Labels> random_instance(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> kd(1, std::max(1, n / 2));
  for (;;) {
    auto truth = random_labels(rng, n, kd(rng));
    auto pred = random_labels(rng, n, kd(rng));
    const auto counts = count_pairs(truth, pred);
    if (counts.truth > 0 && counts.predicted > 0) return {truth, pred};
  }
}

}  // namespace oracle
