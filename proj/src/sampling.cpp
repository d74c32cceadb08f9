#include "pairest/sampling.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pairest/error.hpp"

namespace pairest {

Clustering inject_misattribution(const Clustering& truth, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw Error(ErrorCode::InvalidInput, "misattribution rate must lie in [0, 1]");
  }
  const auto n = static_cast<std::uint32_t>(truth.universe_size());
  if (n == 0) throw Error(ErrorCode::InvalidInput, "cannot corrupt an empty clustering");
  // tolerance keeps e.g. 0.29 * 100 from flooring to 28
  const auto moves = static_cast<std::uint32_t>(std::floor(rate * n + 1e-9));

  std::vector<std::uint32_t> labels(truth.assignment().begin(), truth.assignment().end());
  for (std::uint32_t moved : draw_without_replacement(n, moves, rng)) {
    const auto donor = static_cast<MentionIndex>(rng.below(n));
    labels[moved] = truth.cluster_of(donor);
  }
  std::vector<std::string> names(truth.cluster_count());
  for (ClusterIndex k = 0; k < truth.cluster_count(); ++k) names[k] = truth.cluster_label(k);
  return Clustering(truth.shared_universe(), labels, std::move(names));
}

ClusterSample sample_clusters(const Clustering& truth, std::size_t n, WeightScheme weights,
                              Rng& rng) {
  if (truth.universe_size() == 0) {
    throw Error(ErrorCode::InvalidInput, "cannot sample from an empty clustering");
  }
  if (n == 0) throw Error(ErrorCode::InvalidInput, "sample size must be at least 1");
  std::vector<ClusterIndex> drawn;
  drawn.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (weights == WeightScheme::ClusterSize) {
      drawn.push_back(truth.cluster_of(static_cast<MentionIndex>(rng.below(truth.universe_size()))));
    } else {
      drawn.push_back(static_cast<ClusterIndex>(rng.below(truth.cluster_count())));
    }
  }
  SamplingDesign design;
  design.sampling_type = SamplingType::Cluster;
  design.weights = weights;
  return sample_from_truth(truth, drawn, design);
}

}  // namespace pairest
