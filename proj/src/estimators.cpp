#include "pairest/estimators.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "pairest/checked.hpp"
#include "pairest/error.hpp"
#include "pairest/ratio.hpp"

namespace pairest {

namespace {

template <typename Enum, std::size_t N>
Enum parse_named(std::string_view s, const std::pair<std::string_view, Enum> (&table)[N],
                 std::string_view what) {
  for (const auto& [name, value] : table) {
    if (name == s) return value;
  }
  std::string valid;
  for (std::size_t i = 0; i < N; ++i) {
    if (i) valid += ", ";
    valid += "\"" + std::string(table[i].first) + "\"";
  }
  throw Error(ErrorCode::InvalidDesign,
              "unknown " + std::string(what) + " \"" + std::string(s) + "\"; expected one of " + valid);
}

constexpr std::pair<std::string_view, SamplingType> kSamplingTypes[] = {
    {"record", SamplingType::Record},
    {"cluster", SamplingType::Cluster},
    {"cluster_block", SamplingType::ClusterBlock},
    {"single_block", SamplingType::SingleBlock},
};
constexpr std::pair<std::string_view, WeightScheme> kWeightSchemes[] = {
    {"uniform", WeightScheme::Uniform},
    {"cluster_size", WeightScheme::ClusterSize},
};
constexpr std::pair<std::string_view, Metric> kMetrics[] = {
    {"precision", Metric::Precision},
    {"recall", Metric::Recall},
};

void require_compatible(const Clustering& pred, const ClusterSample& sample) {
  if (!sample.universe) {
    throw Error(ErrorCode::InvalidInput, "sample is not bound to a mention universe");
  }
  if (!sample.universe->same_as(pred.universe())) {
    throw Error(ErrorCode::UniverseMismatch,
                "sample was resolved against a different mention universe than the prediction");
  }
  if (sample.clusters.empty()) {
    throw Error(ErrorCode::InvalidInput, "sample contains no clusters");
  }
  for (const auto& c : sample.clusters) {
    if (c.empty()) throw Error(ErrorCode::InvalidInput, "sampled cluster is empty");
  }
}

void require_weights(std::span<const double> w, std::size_t n) {
  if (w.size() != n) {
    throw Error(ErrorCode::InvalidDesign, "expected " + std::to_string(n) +
                                              " sampling probabilities, got " +
                                              std::to_string(w.size()));
  }
  for (double x : w) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error(ErrorCode::InvalidDesign, "sampling probabilities must be positive and finite");
    }
  }
}

// Estimate from per-sample ratio terms; a single sample gives the plain
// ratio with no variance.
Estimate ratio_terms_estimate(const std::vector<double>& a, const std::vector<double>& b,
                              std::optional<std::uint64_t> population) {
  Estimate e;
  e.n = a.size();
  e.theta = fpc_theta(e.n, population);
  if (e.n == 1) {
    if (a[0] == 0.0) throw Error(ErrorCode::DegenerateRatio, "denominator term is zero");
    e.value = b[0] / a[0];
    return e;
  }
  const auto r = ratio_estimate_and_variance(a, b, e.theta);
  e.value = r.value;
  e.std = std::sqrt(r.variance);
  return e;
}

// Record sampling: p_i = weight / normaliser.
struct RecordProbabilities {
  std::vector<double> weight;
  double normaliser = 1.0;
};

RecordProbabilities record_probabilities(const Clustering& pred, const ClusterSample& sample) {
  const auto n = sample.clusters.size();
  RecordProbabilities p;
  if (const auto* scheme = std::get_if<WeightScheme>(&sample.design.weights)) {
    if (*scheme != WeightScheme::Uniform) {
      throw Error(ErrorCode::InvalidDesign,
                  "record sampling needs exact record probabilities: use \"uniform\" weights or "
                  "explicit normalised probabilities");
    }
    p.weight.assign(n, 1.0);
    p.normaliser = static_cast<double>(pred.universe_size());
  } else {
    const auto& explicit_p = std::get<std::vector<double>>(sample.design.weights);
    require_weights(explicit_p, n);
    p.weight = explicit_p;
  }
  return p;
}

// Members of all clusters of a block; overlapping clusters are rejected.
MentionSet block_members(const Block& block) {
  std::vector<MentionIndex> all;
  for (const auto& c : block.clusters) all.insert(all.end(), c.begin(), c.end());
  try {
    return MentionSet(std::move(all));
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidInput, "clusters within a block overlap");
  }
}

#ifndef NDEBUG
// |T_b ∩ P_b| counted from the (truth cluster, predicted cluster) contingency
// of the block, independently of f.
std::uint64_t block_common_pairs(const Block& block, const Clustering& pred) {
  std::map<std::pair<std::size_t, ClusterIndex>, std::uint64_t> cells;
  for (std::size_t t = 0; t < block.clusters.size(); ++t) {
    for (MentionIndex m : block.clusters[t]) ++cells[{t, pred.cluster_of(m)}];
  }
  std::uint64_t total = 0;
  for (const auto& [key, count] : cells) total += choose2(count);
  return total;
}
#endif

struct BlockTerms {
  double predicted = 0.0;  // |P_b| + |P_b^-| / 2
  double truth = 0.0;      // |T_b|
  double common = 0.0;     // |T_b ∩ P_b|
};

BlockTerms block_terms(const Block& block, const Clustering& pred) {
  if (block.clusters.empty()) throw Error(ErrorCode::InvalidInput, "empty block");
  const auto links = block_link_counts(block_members(block), pred);
  std::uint64_t truth = 0;
  std::uint64_t common = 0;
  for (const auto& c : block.clusters) {
    if (c.empty()) throw Error(ErrorCode::InvalidInput, "empty cluster in block");
    truth = checked_add(truth, choose2(c.size()));
    common = checked_add(common, f_value(c, pred));
  }
  assert(common == block_common_pairs(block, pred));
  return {static_cast<double>(links.within) + 0.5 * static_cast<double>(links.outgoing),
          static_cast<double>(truth), static_cast<double>(common)};
}

}  // namespace

std::string_view to_string(SamplingType t) noexcept {
  for (const auto& [name, value] : kSamplingTypes) {
    if (value == t) return name;
  }
  return "?";
}

std::string_view to_string(WeightScheme w) noexcept {
  for (const auto& [name, value] : kWeightSchemes) {
    if (value == w) return name;
  }
  return "?";
}

std::string_view to_string(Metric m) noexcept {
  return m == Metric::Precision ? "precision" : "recall";
}

SamplingType parse_sampling_type(std::string_view s) {
  return parse_named(s, kSamplingTypes, "sampling_type");
}

WeightScheme parse_weight_scheme(std::string_view s) {
  return parse_named(s, kWeightSchemes, "weights");
}

Metric parse_metric(std::string_view s) { return parse_named(s, kMetrics, "metric"); }

ClusterSample make_sample(const MembershipVector& sample, const Clustering& pred,
                          SamplingDesign design, bool allow_missing,
                          const std::optional<std::vector<double>>& cluster_weights) {
  if (cluster_weights && cluster_weights->size() != sample.size()) {
    throw Error(ErrorCode::InvalidInput, "weight column length does not match sample");
  }
  // cluster order: first appearance in sorted mention order
  std::map<std::string, std::size_t> slot;
  std::vector<std::vector<MentionIndex>> members;
  std::vector<double> weights;
  std::vector<std::string> names;
  const auto entries = sample.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    auto [it, inserted] = slot.try_emplace(e.cluster_id, members.size());
    if (inserted) {
      members.emplace_back();
      names.push_back(e.cluster_id);
      if (cluster_weights) weights.push_back((*cluster_weights)[i]);
    } else if (cluster_weights && weights[it->second] != (*cluster_weights)[i]) {
      throw Error(ErrorCode::InvalidDesign,
                  "weights differ within sampled cluster '" + e.cluster_id + "'");
    }
    auto idx = pred.universe().find(e.mention_id);
    if (!idx) {
      if (allow_missing) continue;
      throw Error(ErrorCode::UnknownMention,
                  "sampled mention '" + e.mention_id + "' is absent from the prediction");
    }
    members[it->second].push_back(*idx);
  }

  ClusterSample out;
  out.universe = pred.shared_universe();
  out.design = std::move(design);
  std::vector<double> kept_weights;
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k].empty()) continue;
    out.clusters.emplace_back(std::move(members[k]));
    if (cluster_weights) kept_weights.push_back(weights[k]);
  }
  if (cluster_weights) out.design.weights = std::move(kept_weights);
  return out;
}

ClusterSample sample_from_truth(const Clustering& truth, std::span<const ClusterIndex> clusters,
                                SamplingDesign design) {
  ClusterSample out;
  out.universe = truth.shared_universe();
  out.design = std::move(design);
  out.clusters.reserve(clusters.size());
  for (ClusterIndex k : clusters) {
    const auto members = truth.cluster(k);
    out.clusters.emplace_back(std::vector<MentionIndex>(members.begin(), members.end()));
  }
  return out;
}

std::vector<double> design_weights(const ClusterSample& sample) {
  const auto& design = sample.design;
  // a lone block's weight cancels in its ratio
  if (design.sampling_type == SamplingType::SingleBlock) return {1.0};
  if (const auto* explicit_p = std::get_if<std::vector<double>>(&design.weights)) {
    require_weights(*explicit_p, sample.clusters.size());
    return *explicit_p;
  }
  const auto scheme = std::get<WeightScheme>(design.weights);
  std::vector<double> w;
  w.reserve(sample.clusters.size());
  for (const auto& c : sample.clusters) {
    w.push_back(scheme == WeightScheme::Uniform ? 1.0 : static_cast<double>(c.size()));
  }
  return w;
}

std::vector<Block> blocks_of(const ClusterSample& sample) {
  std::vector<Block> blocks;
  if (sample.design.sampling_type == SamplingType::SingleBlock) {
    blocks.push_back(Block{sample.clusters});
  } else {
    blocks.reserve(sample.clusters.size());
    for (const auto& c : sample.clusters) blocks.push_back(Block{{c}});
  }
  return blocks;
}

Estimate precision_record(const Clustering& pred, const ClusterSample& sample) {
  require_compatible(pred, sample);
  const auto p = record_probabilities(pred, sample);
  const std::size_t n = sample.clusters.size();
  std::vector<double> x(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& c = sample.clusters[s];
    x[s] = (p.normaliser * g_value(c, pred)) / (static_cast<double>(c.size()) * p.weight[s]);
  }
  // unbiased mean of x: the ratio machinery with a unit denominator
  return ratio_terms_estimate(std::vector<double>(n, 1.0), x, sample.design.population_size);
}

Estimate recall_record(const Clustering& pred, const ClusterSample& sample) {
  require_compatible(pred, sample);
  const auto p = record_probabilities(pred, sample);
  const std::size_t n = sample.clusters.size();
  // A_s = (|c|-1)/p_i and B_s = 2 f/(|c| p_i), both halved and with the
  // normaliser dropped; the ratio is invariant to a common scale.
  std::vector<double> a(n);
  std::vector<double> b(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& c = sample.clusters[s];
    const double q = static_cast<double>(c.size()) * p.weight[s];
    a[s] = static_cast<double>(choose2(c.size())) / q;
    b[s] = static_cast<double>(f_value(c, pred)) / q;
  }
  return ratio_terms_estimate(a, b, sample.design.population_size);
}

Estimate precision_cluster(const Clustering& pred, const ClusterSample& sample) {
  require_compatible(pred, sample);
  const auto w = design_weights(sample);
  const std::size_t n = sample.clusters.size();
  const double universe = static_cast<double>(pred.universe_size());
  std::vector<double> a(n);
  std::vector<double> b(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& c = sample.clusters[s];
    a[s] = static_cast<double>(c.size()) / w[s];
    b[s] = (universe * g_value(c, pred)) / w[s];
  }
  return ratio_terms_estimate(a, b, sample.design.population_size);
}

Estimate recall_cluster(const Clustering& pred, const ClusterSample& sample) {
  require_compatible(pred, sample);
  const auto w = design_weights(sample);
  const std::size_t n = sample.clusters.size();
  std::vector<double> a(n);
  std::vector<double> b(n);
  for (std::size_t s = 0; s < n; ++s) {
    const auto& c = sample.clusters[s];
    a[s] = static_cast<double>(choose2(c.size())) / w[s];
    b[s] = static_cast<double>(f_value(c, pred)) / w[s];
  }
  return ratio_terms_estimate(a, b, sample.design.population_size);
}

Estimate precision_block(const Clustering& pred, std::span<const Block> blocks,
                         std::span<const double> weights,
                         std::optional<std::uint64_t> population_size) {
  if (blocks.empty()) throw Error(ErrorCode::InvalidInput, "no sampled blocks");
  require_weights(weights, blocks.size());
  std::vector<double> a(blocks.size());
  std::vector<double> b(blocks.size());
  bool any_links = false;
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    const auto t = block_terms(blocks[s], pred);
    any_links = any_links || t.predicted > 0.0;
    a[s] = t.predicted / weights[s];
    b[s] = t.common / weights[s];
  }
  if (!any_links) {
    throw Error(ErrorCode::NoPredictedLinks, "no predicted link touches any sampled block");
  }
  return ratio_terms_estimate(a, b, population_size);
}

Estimate recall_block(const Clustering& pred, std::span<const Block> blocks,
                      std::span<const double> weights,
                      std::optional<std::uint64_t> population_size) {
  if (blocks.empty()) throw Error(ErrorCode::InvalidInput, "no sampled blocks");
  require_weights(weights, blocks.size());
  std::vector<double> a(blocks.size());
  std::vector<double> b(blocks.size());
  for (std::size_t s = 0; s < blocks.size(); ++s) {
    const auto t = block_terms(blocks[s], pred);
    a[s] = t.truth / weights[s];
    b[s] = t.common / weights[s];
  }
  return ratio_terms_estimate(a, b, population_size);
}

PrecisionRecall naive_precision_recall(const Clustering& pred, const ClusterSample& sample) {
  require_compatible(pred, sample);
  // repeated draws of one cluster count once
  std::vector<const MentionSet*> distinct;
  for (const auto& c : sample.clusters) distinct.push_back(&c);
  std::sort(distinct.begin(), distinct.end(),
            [](const MentionSet* x, const MentionSet* y) {
              return std::lexicographical_compare(x->begin(), x->end(), y->begin(), y->end());
            });
  distinct.erase(std::unique(distinct.begin(), distinct.end(),
                             [](const MentionSet* x, const MentionSet* y) { return *x == *y; }),
                 distinct.end());

  std::vector<MentionIndex> all;
  std::uint64_t truth_pairs = 0;
  std::uint64_t common = 0;
  for (const auto* c : distinct) {
    all.insert(all.end(), c->begin(), c->end());
    truth_pairs = checked_add(truth_pairs, choose2(c->size()));
    common = checked_add(common, f_value(*c, pred));
  }
  MentionSet records;
  try {
    records = MentionSet(std::move(all));
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidInput, "sampled clusters overlap without being identical");
  }
  // predicted links among the sampled records only
  const auto predicted = block_link_counts(records, pred).within;
  if (predicted == 0) {
    throw Error(ErrorCode::NoPredictedLinks, "no predicted links among the sampled records");
  }
  if (truth_pairs == 0) {
    throw Error(ErrorCode::NoTrueLinks, "sampled clusters contain no true links");
  }
  return {static_cast<double>(common) / static_cast<double>(predicted),
          static_cast<double>(common) / static_cast<double>(truth_pairs)};
}

Estimate estimate(const Clustering& pred, const ClusterSample& sample, Metric metric,
                  const EstimateOptions& options) {
  Estimate e;
  const bool precision = metric == Metric::Precision;
  switch (sample.design.sampling_type) {
    case SamplingType::Record:
      e = precision ? precision_record(pred, sample) : recall_record(pred, sample);
      break;
    case SamplingType::Cluster:
      e = precision ? precision_cluster(pred, sample) : recall_cluster(pred, sample);
      break;
    case SamplingType::ClusterBlock:
      if (precision) {
        require_compatible(pred, sample);
        const auto blocks = blocks_of(sample);
        e = precision_block(pred, blocks, design_weights(sample), sample.design.population_size);
      } else {
        e = recall_cluster(pred, sample);
      }
      break;
    case SamplingType::SingleBlock: {
      require_compatible(pred, sample);
      const auto blocks = blocks_of(sample);
      const auto w = design_weights(sample);
      e = precision ? precision_block(pred, blocks, w, sample.design.population_size)
                    : recall_block(pred, blocks, w, sample.design.population_size);
      break;
    }
  }
  if (options.clamp) e.value = std::clamp(e.value, 0.0, 1.0);
  return e;
}

}  // namespace pairest
