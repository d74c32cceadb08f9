#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "pairest/clustering.hpp"
#include "pairest/membership.hpp"

namespace pairest {

enum class SamplingType { Record, Cluster, ClusterBlock, SingleBlock };
enum class WeightScheme { Uniform, ClusterSize };
enum class Metric { Precision, Recall };

std::string_view to_string(SamplingType t) noexcept;
std::string_view to_string(WeightScheme w) noexcept;
std::string_view to_string(Metric m) noexcept;

/// Parse the public design strings ("record", "cluster", "cluster_block",
/// "single_block"; "uniform", "cluster_size"; "precision", "recall").
/// Unknown strings raise InvalidDesign listing the valid options.
SamplingType parse_sampling_type(std::string_view s);
WeightScheme parse_weight_scheme(std::string_view s);
Metric parse_metric(std::string_view s);

struct SamplingDesign {
  SamplingType sampling_type = SamplingType::Cluster;
  /// A named scheme, or one explicit probability per sampled element.
  /// Record sampling needs normalised probabilities; the other designs only
  /// need them up to a common factor.
  std::variant<WeightScheme, std::vector<double>> weights = WeightScheme::Uniform;
  /// Population size T for the finite-population correction; absent means
  /// theta = 1.
  std::optional<std::uint64_t> population_size;
};

/// Fully resolved ground-truth clusters drawn under `design`, expressed in
/// the mention indices of `universe`.
struct ClusterSample {
  std::shared_ptr<const Universe> universe;
  std::vector<MentionSet> clusters;
  SamplingDesign design;
};

struct Estimate {
  double value = 0.0;
  std::optional<double> std;  // absent for single-sample estimates
  std::size_t n = 0;
  double theta = 1.0;
};

/// A sampled block: the truth clusters it contains.
struct Block {
  std::vector<MentionSet> clusters;
};

struct EstimateOptions {
  /// Clamp the reported value into [0, 1]. Off by default: clamping biases
  /// the record-sampling precision estimator.
  bool clamp = false;
};

/// Groups a membership vector of sampled truth clusters and resolves its
/// mentions in the prediction's universe. With `allow_missing`, mentions
/// absent from the prediction are dropped (and emptied clusters removed);
/// otherwise they raise UnknownMention. `cluster_weights`, if given, is
/// aligned with `sample.entries()` and must be constant within a cluster;
/// it becomes the design's explicit probabilities.
ClusterSample make_sample(const MembershipVector& sample, const Clustering& pred,
                          SamplingDesign design, bool allow_missing = false,
                          const std::optional<std::vector<double>>& cluster_weights = std::nullopt);

/// Sample whose clusters are the given truth clusters.
ClusterSample sample_from_truth(const Clustering& truth, std::span<const ClusterIndex> clusters,
                                SamplingDesign design);

// Record sampling: each sampled cluster is c(i_s) of a sampled record i_s.
Estimate precision_record(const Clustering& pred, const ClusterSample& sample);
Estimate recall_record(const Clustering& pred, const ClusterSample& sample);

// Cluster sampling with probabilities known up to proportionality.
Estimate precision_cluster(const Clustering& pred, const ClusterSample& sample);
Estimate recall_cluster(const Clustering& pred, const ClusterSample& sample);

// Disjoint block sampling. Each block must consist of whole truth clusters.
Estimate precision_block(const Clustering& pred, std::span<const Block> blocks,
                         std::span<const double> weights,
                         std::optional<std::uint64_t> population_size = std::nullopt);
Estimate recall_block(const Clustering& pred, std::span<const Block> blocks,
                      std::span<const double> weights,
                      std::optional<std::uint64_t> population_size = std::nullopt);

/// Blocks implied by a sample design: one per cluster for cluster_block,
/// a single block for single_block.
std::vector<Block> blocks_of(const ClusterSample& sample);

/// Per-sample weights implied by the design (named scheme or explicit).
std::vector<double> design_weights(const ClusterSample& sample);

/// Precision and recall computed only on the records of the sampled
/// clusters, ignoring the design. Optimistically biased; kept as baseline.
PrecisionRecall naive_precision_recall(const Clustering& pred, const ClusterSample& sample);

/// Dispatch on sample.design:
///   record        -> precision_record | recall_record
///   cluster       -> precision_cluster | recall_cluster
///   cluster_block -> precision_block (one block per cluster) | recall_cluster
///   single_block  -> precision_block | recall_block over one block
Estimate estimate(const Clustering& pred, const ClusterSample& sample, Metric metric,
                  const EstimateOptions& options = {});

}  // namespace pairest
