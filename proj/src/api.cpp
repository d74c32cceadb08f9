#include "pairest/api.hpp"

#include "pairest/estimators.hpp"

namespace pairest {

namespace {

EstimatorResult run(const MembershipVector& prediction, const MembershipVector& sample,
                    std::string_view sampling_type, std::string_view weights, Metric metric) {
  SamplingDesign design;
  design.sampling_type = parse_sampling_type(sampling_type);
  design.weights = parse_weight_scheme(weights);
  const Clustering pred = Clustering::from_membership(prediction);
  const Estimate e = estimate(pred, make_sample(sample, pred, design), metric);
  return {e.value, e.std};
}

}  // namespace

EstimatorResult pairwise_precision_estimator(const MembershipVector& prediction,
                                             const MembershipVector& sample,
                                             std::string_view sampling_type,
                                             std::string_view weights) {
  return run(prediction, sample, sampling_type, weights, Metric::Precision);
}

EstimatorResult pairwise_recall_estimator(const MembershipVector& prediction,
                                          const MembershipVector& sample,
                                          std::string_view sampling_type,
                                          std::string_view weights) {
  return run(prediction, sample, sampling_type, weights, Metric::Recall);
}

PrecisionRecall exact_precision_recall(const MembershipVector& truth,
                                       const MembershipVector& prediction) {
  return exact_precision_recall(Clustering::from_membership(truth),
                                Clustering::from_membership(prediction));
}

}  // namespace pairest
