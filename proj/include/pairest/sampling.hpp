#pragma once

#include <cstddef>

#include "pairest/clustering.hpp"
#include "pairest/estimators.hpp"
#include "pairest/rng.hpp"

namespace pairest {

/// Moves floor(rate * N) distinct records, chosen uniformly without
/// replacement, into the truth cluster of an independently drawn uniform
/// donor record. Donors are drawn from all records (the moved record
/// itself included, making that move a no-op) and refer to the input
/// assignment, so the result does not depend on move order. Donor clusters
/// are thus drawn proportionally to their size.
Clustering inject_misattribution(const Clustering& truth, double rate, Rng& rng);

/// n with-replacement draws of truth clusters. ClusterSize draws a uniform
/// record and takes its cluster; Uniform draws clusters equiprobably. The
/// returned design is cluster sampling with the given weights.
ClusterSample sample_clusters(const Clustering& truth, std::size_t n, WeightScheme weights,
                              Rng& rng);

}  // namespace pairest
