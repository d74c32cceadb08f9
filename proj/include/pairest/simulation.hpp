#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pairest/clustering.hpp"
#include "pairest/estimators.hpp"
#include "pairest/synthetic.hpp"

namespace pairest {

enum class SimEstimator { PNaive, RNaive, PRecord, RRecord, PClusterBlock };

inline constexpr SimEstimator kAllSimEstimators[] = {
    SimEstimator::PClusterBlock, SimEstimator::PNaive, SimEstimator::PRecord,
    SimEstimator::RNaive, SimEstimator::RRecord};

std::string_view to_string(SimEstimator e) noexcept;
/// "P_naive", "R_naive", "P_record", "R_record", "P_cluster_block".
SimEstimator parse_sim_estimator(std::string_view s);
Metric metric_of(SimEstimator e) noexcept;

/// Evaluates one registry estimator on a sample drawn by uniform record
/// sampling (cluster_size weights).
double evaluate_sim_estimator(SimEstimator e, const Clustering& pred, const ClusterSample& sample);

struct TruthSource {
  std::filesystem::path file;  // membership CSV; empty selects the synthetic truth
  ClusterTruthConfig synthetic;
};

struct SimulationConfig {
  TruthSource truth;
  std::vector<double> misattribution_rates{0.05, 0.10, 0.20};
  std::vector<std::size_t> sample_sizes{100, 200, 400};
  std::size_t repetitions = 100;
  std::vector<SimEstimator> estimators{std::begin(kAllSimEstimators), std::end(kAllSimEstimators)};
  std::uint64_t master_seed = 1;
};

/// One "field: problem" entry per invalid field.
std::vector<std::string> config_problems(const SimulationConfig& cfg);
/// SchemaError listing every invalid field.
void validate(const SimulationConfig& cfg);

struct ErrorSummary {
  std::size_t successes = 0;
  std::map<std::string, std::size_t> failures;  // error name -> count
  double mean_estimate = 0.0;
  double bias = 0.0;  // mean(estimate - oracle)
  double rmse = 0.0;  // sqrt(mean((estimate - oracle)^2))
};

/// Summary over repetitions; failed repetitions are absent entries.
ErrorSummary summarize(std::span<const std::optional<double>> estimates,
                       std::span<const double> oracle);

struct SimulationCell {
  SimEstimator estimator = SimEstimator::PClusterBlock;
  double rate = 0.0;
  std::size_t sample_size = 0;
  std::vector<std::optional<double>> estimates;  // one per repetition
  std::vector<double> oracle;                    // matching metric, per repetition
  std::vector<std::string> errors;               // error name per failed repetition, else ""
  double oracle_precision_mean = 0.0;
  double oracle_recall_mean = 0.0;
  ErrorSummary summary;
};

struct SimulationReport {
  SimulationConfig config;
  std::size_t truth_mentions = 0;
  std::size_t truth_clusters = 0;
  std::vector<SimulationCell> cells;  // estimator-major, then rate, then size

  const SimulationCell& cell(SimEstimator e, double rate, std::size_t size) const;
};

Clustering load_truth(const SimulationConfig& cfg);

/// For every rate and repetition the truth is corrupted once (shared by all
/// sample sizes of that repetition), then for every size one sample is drawn
/// by uniform record sampling and every requested estimator is evaluated
/// against the corrupted prediction. Oracles are recomputed per repetition.
/// Each (rate, repetition) owns its random streams, so the report is
/// identical for any thread count.
SimulationReport run_simulation(const Clustering& truth, const SimulationConfig& cfg,
                                unsigned threads = 1);
SimulationReport run_simulation(const SimulationConfig& cfg, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Benchmark bias experiment: a rule-based matcher on a synthetic person
// population, evaluated from small samples of truth clusters.

/// The population used by the benchmark experiment for `seed`.
SyntheticPopulation seeded_population(const SyntheticPersonConfig& cfg, std::uint64_t seed);

enum class MatcherKind { Rules, Truth };

struct BenchmarkConfig {
  SyntheticPersonConfig population;
  MatcherKind matcher = MatcherKind::Rules;
  std::size_t repetitions = 5000;
  std::size_t records_per_sample = 200;
  std::uint64_t seed = 1;
};

struct BenchmarkResult {
  PrecisionRecall oracle;
  std::size_t records = 0;
  std::size_t truth_clusters = 0;
  std::vector<std::optional<double>> naive;     // naive precision per repetition
  std::vector<std::optional<double>> adjusted;  // cluster_block precision per repetition
  ErrorSummary naive_summary;
  ErrorSummary adjusted_summary;
};

BenchmarkResult run_benchmark_bias_experiment(const BenchmarkConfig& cfg, unsigned threads = 1);

}  // namespace pairest
