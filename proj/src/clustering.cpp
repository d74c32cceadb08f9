#include "pairest/clustering.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "pairest/checked.hpp"
#include "pairest/error.hpp"

namespace pairest {

namespace {

constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

// Predicted-cluster indices of `members`, sorted so equal clusters are adjacent.
std::vector<ClusterIndex> sorted_clusters_of(std::span<const MentionIndex> members,
                                             const Clustering& pred) {
  std::vector<ClusterIndex> ks;
  ks.reserve(members.size());
  const auto n = pred.universe_size();
  for (MentionIndex m : members) {
    if (m >= n) {
      throw Error(ErrorCode::UnknownMention,
                  "mention index " + std::to_string(m) + " outside universe of size " +
                      std::to_string(n));
    }
    ks.push_back(pred.cluster_of(m));
  }
  std::sort(ks.begin(), ks.end());
  return ks;
}

// Calls fn(cluster, count) for each run of equal values.
template <typename Fn>
void for_each_run(const std::vector<ClusterIndex>& sorted, Fn&& fn) {
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    fn(sorted[i], static_cast<std::uint64_t>(j - i));
    i = j;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Universe / MentionSet

Universe::Universe(std::vector<std::string> ids) : ids_(std::move(ids)) {
  if (ids_.size() > std::numeric_limits<MentionIndex>::max()) {
    throw Error(ErrorCode::Overflow, "universe exceeds 2^32-1 mentions");
  }
  for (std::size_t i = 1; i < ids_.size(); ++i) {
    if (!(ids_[i - 1] < ids_[i])) {
      throw Error(ErrorCode::DuplicateMention,
                  "universe ids must be strictly increasing near '" + ids_[i] + "'");
    }
  }
}

std::optional<MentionIndex> Universe::find(std::string_view id) const noexcept {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<MentionIndex>(it - ids_.begin());
}

MentionIndex Universe::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorCode::UnknownMention, "mention '" + std::string(id) + "' not in universe");
}

MentionSet::MentionSet(std::vector<MentionIndex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
    throw Error(ErrorCode::DuplicateMention, "mention repeated within a set");
  }
}

MentionSet MentionSet::from_ids(const Universe& universe, std::span<const std::string> ids) {
  std::vector<MentionIndex> out;
  out.reserve(ids.size());
  for (const auto& id : ids) out.push_back(universe.index_of(id));
  return MentionSet(std::move(out));
}

// ---------------------------------------------------------------------------
// Clustering

Clustering::Clustering()
    : universe_(std::make_shared<const Universe>(std::vector<std::string>{})), offsets_{0} {}

Clustering::Clustering(std::shared_ptr<const Universe> universe,
                       std::span<const std::uint32_t> labels,
                       std::vector<std::string> label_names)
    : universe_(std::move(universe)) {
  const std::size_t n = universe_->size();
  if (labels.size() != n) {
    throw Error(ErrorCode::InvalidInput, "label count does not match universe size");
  }

  // canonical cluster order: by first (smallest) member
  std::vector<std::uint32_t> remap(label_names.size(), kUnseen);
  assignment_.resize(n);
  for (std::size_t m = 0; m < n; ++m) {
    const auto l = labels[m];
    if (l >= label_names.size()) {
      throw Error(ErrorCode::InvalidInput, "cluster label index out of range");
    }
    if (remap[l] == kUnseen) {
      remap[l] = static_cast<std::uint32_t>(labels_.size());
      labels_.push_back(std::move(label_names[l]));
    }
    assignment_[m] = remap[l];
  }

  const std::size_t k = labels_.size();
  offsets_.assign(k + 1, 0);
  for (auto c : assignment_) ++offsets_[c + 1];
  for (std::size_t i = 0; i < k; ++i) offsets_[i + 1] += offsets_[i];
  members_.resize(n);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t m = 0; m < n; ++m) {
    members_[cursor[assignment_[m]]++] = static_cast<MentionIndex>(m);
  }

  for (std::size_t i = 0; i < k; ++i) {
    pair_count_ = checked_add(pair_count_, choose2(offsets_[i + 1] - offsets_[i]));
  }
}

Clustering Clustering::from_membership(const MembershipVector& mv) {
  std::vector<std::string> ids;
  ids.reserve(mv.size());
  std::vector<std::uint32_t> labels;
  labels.reserve(mv.size());
  std::vector<std::string> names;
  std::unordered_map<std::string_view, std::uint32_t> seen;
  for (const auto& e : mv) {
    ids.push_back(e.mention_id);
    auto [it, inserted] = seen.try_emplace(e.cluster_id, static_cast<std::uint32_t>(names.size()));
    if (inserted) names.push_back(e.cluster_id);
    labels.push_back(it->second);
  }
  auto universe = std::make_shared<const Universe>(std::move(ids));
  return Clustering(std::move(universe), labels, std::move(names));
}

MembershipVector Clustering::to_membership() const {
  std::vector<MembershipEntry> entries;
  entries.reserve(universe_size());
  for (std::size_t m = 0; m < universe_size(); ++m) {
    entries.push_back({universe_->id(static_cast<MentionIndex>(m)), labels_[assignment_[m]]});
  }
  return MembershipVector(std::move(entries));
}

std::span<const MentionIndex> Clustering::cluster(ClusterIndex k) const {
  const auto lo = offsets_.at(k);
  const auto hi = offsets_.at(k + 1);
  return std::span<const MentionIndex>(members_).subspan(lo, hi - lo);
}

bool Clustering::same_partition(const Clustering& other) const {
  // canonical ordering makes equal partitions produce equal assignments
  return universe_->same_as(*other.universe_) && assignment_ == other.assignment_;
}

// ---------------------------------------------------------------------------
// Pair counting

void require_same_universe(const Clustering& truth, const Clustering& pred) {
  if (truth.universe().same_as(pred.universe())) return;
  std::vector<std::string> only;
  const auto a = truth.universe().ids();
  const auto b = pred.universe().ids();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only));
  std::string listing;
  for (std::size_t i = 0; i < only.size() && i < 20; ++i) {
    if (i) listing += ", ";
    listing += only[i];
  }
  if (only.size() > 20) listing += ", ...";
  throw Error(ErrorCode::UniverseMismatch,
              std::to_string(only.size()) + " mention(s) not shared by both clusterings: " + listing);
}

std::uint64_t f_value(const MentionSet& c, const Clustering& pred) {
  std::uint64_t f = 0;
  for_each_run(sorted_clusters_of(c.members(), pred),
               [&](ClusterIndex, std::uint64_t k) { f = checked_add(f, choose2(k)); });
  return f;
}

double g_value(const MentionSet& c, const Clustering& pred) {
  if (pred.pair_count() == 0) {
    throw Error(ErrorCode::NoPredictedLinks, "prediction has no co-clustered pairs");
  }
  return static_cast<double>(f_value(c, pred)) / static_cast<double>(pred.pair_count());
}

PairStats pair_stats(const Clustering& truth, const Clustering& pred) {
  require_same_universe(truth, pred);
  PairStats s;
  s.matching_pairs = truth.pair_count();
  s.predicted_pairs = pred.pair_count();
  for (ClusterIndex k = 0; k < truth.cluster_count(); ++k) {
    if (truth.cluster_size(k) < 2) continue;
    for_each_run(sorted_clusters_of(truth.cluster(k), pred), [&](ClusterIndex, std::uint64_t n) {
      s.common_pairs = checked_add(s.common_pairs, choose2(n));
    });
  }
  return s;
}

PrecisionRecall exact_precision_recall(const Clustering& truth, const Clustering& pred) {
  const auto s = pair_stats(truth, pred);
  if (s.predicted_pairs == 0) {
    throw Error(ErrorCode::NoPredictedLinks, "prediction has no co-clustered pairs");
  }
  if (s.matching_pairs == 0) {
    throw Error(ErrorCode::NoTrueLinks, "ground truth has no co-clustered pairs");
  }
  return {static_cast<double>(s.common_pairs) / static_cast<double>(s.predicted_pairs),
          static_cast<double>(s.common_pairs) / static_cast<double>(s.matching_pairs)};
}

Clustering restrict(const Clustering& clustering, const MentionSet& subset) {
  const auto n = clustering.universe_size();
  std::vector<std::string> ids;
  ids.reserve(subset.size());
  std::vector<std::uint32_t> labels;
  labels.reserve(subset.size());
  std::vector<std::string> names;
  std::unordered_map<ClusterIndex, std::uint32_t> compact;
  for (MentionIndex m : subset) {
    if (m >= n) {
      throw Error(ErrorCode::UnknownMention, "mention index outside universe");
    }
    ids.push_back(clustering.universe().id(m));
    const auto k = clustering.cluster_of(m);
    auto [it, inserted] = compact.try_emplace(k, static_cast<std::uint32_t>(names.size()));
    if (inserted) names.push_back(clustering.cluster_label(k));
    labels.push_back(it->second);
  }
  return Clustering(std::make_shared<const Universe>(std::move(ids)), labels, std::move(names));
}

BlockLinks block_link_counts(const MentionSet& block, const Clustering& pred) {
  BlockLinks out;
  for_each_run(sorted_clusters_of(block.members(), pred), [&](ClusterIndex c, std::uint64_t k) {
    out.within = checked_add(out.within, choose2(k));
    out.outgoing = checked_add(out.outgoing, checked_mul(k, pred.cluster_size(c) - k));
  });
  return out;
}

}  // namespace pairest
