#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pairest/membership.hpp"

namespace pairest {

using MentionIndex = std::uint32_t;
using ClusterIndex = std::uint32_t;

/// Sorted, immutable set of mention ids. Mentions are addressed by their
/// rank in this order, so two universes with equal id lists agree on every
/// index.
class Universe {
 public:
  /// `ids` must be strictly increasing; otherwise DuplicateMention.
  explicit Universe(std::vector<std::string> ids);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(MentionIndex i) const { return ids_.at(i); }
  std::span<const std::string> ids() const noexcept { return ids_; }

  std::optional<MentionIndex> find(std::string_view id) const noexcept;
  /// Throws UnknownMention.
  MentionIndex index_of(std::string_view id) const;

  bool same_as(const Universe& other) const noexcept {
    return this == &other || ids_ == other.ids_;
  }

 private:
  std::vector<std::string> ids_;
};

/// Sorted set of distinct mention indices relative to some universe.
class MentionSet {
 public:
  MentionSet() = default;
  /// Sorts `members`; repeated members raise DuplicateMention.
  explicit MentionSet(std::vector<MentionIndex> members);

  /// Resolves ids against `universe` (UnknownMention on a miss).
  static MentionSet from_ids(const Universe& universe, std::span<const std::string> ids);

  std::span<const MentionIndex> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const MentionSet&, const MentionSet&) = default;

 private:
  std::vector<MentionIndex> members_;
};

/// A partition of a mention universe into labelled, non-empty clusters.
///
/// Clusters are stored in canonical order (by smallest member), members
/// sorted within each cluster. The predicted pair count is cached at
/// construction since every precision formula divides by it.
class Clustering {
 public:
  /// Empty clustering over an empty universe.
  Clustering();

  /// `labels[m]` is the cluster of mention m, an index into `label_names`.
  /// Labels without members are dropped.
  Clustering(std::shared_ptr<const Universe> universe, std::span<const std::uint32_t> labels,
             std::vector<std::string> label_names);

  static Clustering from_membership(const MembershipVector& mv);
  MembershipVector to_membership() const;

  const Universe& universe() const noexcept { return *universe_; }
  const std::shared_ptr<const Universe>& shared_universe() const noexcept { return universe_; }
  std::size_t universe_size() const noexcept { return universe_->size(); }

  std::size_t cluster_count() const noexcept { return labels_.size(); }
  std::span<const MentionIndex> cluster(ClusterIndex k) const;
  std::size_t cluster_size(ClusterIndex k) const { return offsets_.at(k + 1) - offsets_.at(k); }
  const std::string& cluster_label(ClusterIndex k) const { return labels_.at(k); }
  ClusterIndex cluster_of(MentionIndex m) const { return assignment_.at(m); }
  std::span<const ClusterIndex> assignment() const noexcept { return assignment_; }

  /// Sum over clusters of C(|c|, 2).
  std::uint64_t pair_count() const noexcept { return pair_count_; }

  /// Same partition of the same universe (labels ignored).
  bool same_partition(const Clustering& other) const;

 private:
  std::shared_ptr<const Universe> universe_;
  std::vector<ClusterIndex> assignment_;
  std::vector<std::size_t> offsets_;
  std::vector<MentionIndex> members_;
  std::vector<std::string> labels_;
  std::uint64_t pair_count_ = 0;
};

struct PairStats {
  std::uint64_t matching_pairs = 0;   // |T|
  std::uint64_t predicted_pairs = 0;  // |P|
  std::uint64_t common_pairs = 0;     // |T ∩ P|

  friend bool operator==(const PairStats&, const PairStats&) = default;
};

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

struct BlockLinks {
  std::uint64_t within = 0;    // predicted links with both ends in the block
  std::uint64_t outgoing = 0;  // predicted links with exactly one end in the block
};

/// Throws UniverseMismatch unless both clusterings cover the same mentions.
void require_same_universe(const Clustering& truth, const Clustering& pred);

PairStats pair_stats(const Clustering& truth, const Clustering& pred);

/// Errors with NoPredictedLinks / NoTrueLinks on empty denominators.
PrecisionRecall exact_precision_recall(const Clustering& truth, const Clustering& pred);

/// f(c) = sum over predicted clusters of C(|c ∩ ĉ|, 2).
std::uint64_t f_value(const MentionSet& c, const Clustering& pred);

/// g(c) = f(c) / |P|.
double g_value(const MentionSet& c, const Clustering& pred);

Clustering restrict(const Clustering& clustering, const MentionSet& subset);

BlockLinks block_link_counts(const MentionSet& block, const Clustering& pred);

}  // namespace pairest
