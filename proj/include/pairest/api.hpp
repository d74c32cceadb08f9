#pragma once

#include <optional>
#include <string_view>

#include "pairest/clustering.hpp"
#include "pairest/membership.hpp"

namespace pairest {

struct EstimatorResult {
  double value = 0.0;
  std::optional<double> std;
};

/// Estimator dispatch on plain membership vectors. `sample` holds the fully
/// resolved sampled truth clusters; `sampling_type` and `weights` take the
/// public design strings.
EstimatorResult pairwise_precision_estimator(const MembershipVector& prediction,
                                             const MembershipVector& sample,
                                             std::string_view sampling_type,
                                             std::string_view weights);
EstimatorResult pairwise_recall_estimator(const MembershipVector& prediction,
                                          const MembershipVector& sample,
                                          std::string_view sampling_type,
                                          std::string_view weights);

PrecisionRecall exact_precision_recall(const MembershipVector& truth,
                                       const MembershipVector& prediction);

}  // namespace pairest
