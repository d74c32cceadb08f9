#include "pairest/membership.hpp"

#include <algorithm>

#include "pairest/error.hpp"

namespace pairest {

MembershipVector::MembershipVector(std::vector<MembershipEntry> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const MembershipEntry& a, const MembershipEntry& b) {
              return a.mention_id < b.mention_id;
            });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (e.mention_id.empty()) {
      throw Error(ErrorCode::InvalidInput, "empty mention_id");
    }
    if (e.cluster_id.empty()) {
      throw Error(ErrorCode::InvalidInput, "empty cluster_id for mention '" + e.mention_id + "'");
    }
    if (i > 0 && entries_[i - 1].mention_id == e.mention_id) {
      throw Error(ErrorCode::DuplicateMention, "mention '" + e.mention_id + "' appears twice");
    }
  }
}

}  // namespace pairest
