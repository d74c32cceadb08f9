#pragma once

#include <span>

#include "pairest/clustering.hpp"
#include "pairest/synthetic.hpp"

namespace pairest {

/// Links two records when they agree on (first name, last name, birth year),
/// (first name, birth day, birth year) or (last name, birth day, birth year),
/// and returns the connected components of those links. Each component is
/// labelled by its smallest mention id, so the result is independent of
/// record order. Duplicate mention ids raise DuplicateMention.
Clustering rule_based_matcher(std::span<const PersonRecord> records);

}  // namespace pairest
