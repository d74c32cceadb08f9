#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pairest {

struct MembershipEntry {
  std::string mention_id;
  std::string cluster_id;

  friend bool operator==(const MembershipEntry&, const MembershipEntry&) = default;
};

/// Mention id -> cluster id map, kept sorted by mention id.
///
/// Construction rejects duplicate mention ids (DuplicateMention) and empty
/// ids (InvalidInput). Iteration order never depends on insertion order.
class MembershipVector {
 public:
  MembershipVector() = default;
  explicit MembershipVector(std::vector<MembershipEntry> entries);

  std::span<const MembershipEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  friend bool operator==(const MembershipVector&, const MembershipVector&) = default;

 private:
  std::vector<MembershipEntry> entries_;
};

}  // namespace pairest
