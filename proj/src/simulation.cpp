#include "pairest/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pairest/csv.hpp"
#include "pairest/error.hpp"
#include "pairest/matcher.hpp"
#include "pairest/parallel.hpp"
#include "pairest/ratio.hpp"
#include "pairest/rng.hpp"
#include "pairest/sampling.hpp"

namespace pairest {

namespace {

// stream purposes
constexpr std::uint64_t kTruthStream = 0;
constexpr std::uint64_t kCorruptStream = 1;
constexpr std::uint64_t kSampleStream = 2;
constexpr std::uint64_t kPopulationStream = 3;
constexpr std::uint64_t kBenchmarkSampleStream = 4;

struct NamedEstimator {
  SimEstimator e;
  std::string_view name;
};

constexpr NamedEstimator kNames[] = {
    {SimEstimator::PNaive, "P_naive"},
    {SimEstimator::RNaive, "R_naive"},
    {SimEstimator::PRecord, "P_record"},
    {SimEstimator::RRecord, "R_record"},
    {SimEstimator::PClusterBlock, "P_cluster_block"},
};

ClusterSample with_design(const ClusterSample& sample, SamplingType type, WeightScheme weights) {
  ClusterSample out{sample.universe, sample.clusters, {}};
  out.design.sampling_type = type;
  out.design.weights = weights;
  return out;
}

}  // namespace

std::string_view to_string(SimEstimator e) noexcept {
  for (const auto& n : kNames) {
    if (n.e == e) return n.name;
  }
  return "?";
}

SimEstimator parse_sim_estimator(std::string_view s) {
  for (const auto& n : kNames) {
    if (n.name == s) return n.e;
  }
  std::string valid;
  for (const auto& n : kNames) {
    if (!valid.empty()) valid += ", ";
    valid += '"';
    valid += n.name;
    valid += '"';
  }
  throw Error(ErrorCode::SchemaError,
              "unknown estimator \"" + std::string(s) + "\"; expected one of " + valid);
}

Metric metric_of(SimEstimator e) noexcept {
  return (e == SimEstimator::RNaive || e == SimEstimator::RRecord) ? Metric::Recall
                                                                   : Metric::Precision;
}

double evaluate_sim_estimator(SimEstimator e, const Clustering& pred, const ClusterSample& sample) {
  switch (e) {
    case SimEstimator::PNaive:
      return naive_precision_recall(pred, sample).precision;
    case SimEstimator::RNaive:
      return naive_precision_recall(pred, sample).recall;
    case SimEstimator::PRecord:
      return precision_record(pred, with_design(sample, SamplingType::Record, WeightScheme::Uniform))
          .value;
    case SimEstimator::RRecord:
      return recall_record(pred, with_design(sample, SamplingType::Record, WeightScheme::Uniform))
          .value;
    case SimEstimator::PClusterBlock:
      return estimate(pred,
                      with_design(sample, SamplingType::ClusterBlock, WeightScheme::ClusterSize),
                      Metric::Precision)
          .value;
  }
  throw Error(ErrorCode::Internal, "unhandled estimator");
}

std::vector<std::string> config_problems(const SimulationConfig& cfg) {
  std::vector<std::string> problems;
  if (cfg.misattribution_rates.empty()) problems.push_back("misattribution_rates: empty list");
  for (double r : cfg.misattribution_rates) {
    if (!(r >= 0.0 && r <= 1.0)) {
      problems.push_back("misattribution_rates: " + std::to_string(r) + " outside [0, 1]");
    }
  }
  if (cfg.sample_sizes.empty()) problems.push_back("sample_sizes: empty list");
  for (auto n : cfg.sample_sizes) {
    if (n == 0) problems.push_back("sample_sizes: sizes must be positive");
  }
  if (cfg.repetitions == 0) problems.push_back("repetitions: must be positive");
  if (cfg.estimators.empty()) problems.push_back("estimators: empty list");
  if (cfg.truth.file.empty()) {
    if (cfg.truth.synthetic.mentions == 0) problems.push_back("truth_mentions: must be positive");
    if (cfg.truth.synthetic.max_cluster_size == 0) {
      problems.push_back("truth_max_cluster_size: must be positive");
    }
    if (!std::isfinite(cfg.truth.synthetic.size_exponent)) {
      problems.push_back("truth_size_exponent: must be finite");
    }
  }
  // stream ids pack rate and size indices into 8 bits each
  if (cfg.misattribution_rates.size() > 255) problems.push_back("misattribution_rates: too many");
  if (cfg.sample_sizes.size() > 255) problems.push_back("sample_sizes: too many");
  if (cfg.repetitions >= (std::size_t{1} << 40)) problems.push_back("repetitions: too large");
  return problems;
}

void validate(const SimulationConfig& cfg) {
  const auto problems = config_problems(cfg);
  if (problems.empty()) return;
  std::string msg = "invalid simulation config";
  for (const auto& p : problems) msg += "; " + p;
  throw Error(ErrorCode::SchemaError, msg);
}

ErrorSummary summarize(std::span<const std::optional<double>> estimates,
                       std::span<const double> oracle) {
  ErrorSummary s;
  CompensatedSum sum_est, sum_err, sum_sq;
  for (std::size_t i = 0; i < estimates.size(); ++i) {
    if (!estimates[i]) continue;
    const double err = *estimates[i] - oracle[i];
    sum_est.add(*estimates[i]);
    sum_err.add(err);
    sum_sq.add(err * err);
    ++s.successes;
  }
  if (s.successes == 0) {
    s.mean_estimate = s.bias = s.rmse = std::nan("");
    return s;
  }
  const double n = static_cast<double>(s.successes);
  s.mean_estimate = sum_est.value() / n;
  s.bias = sum_err.value() / n;
  s.rmse = std::sqrt(sum_sq.value() / n);
  return s;
}

const SimulationCell& SimulationReport::cell(SimEstimator e, double rate, std::size_t size) const {
  for (const auto& c : cells) {
    if (c.estimator == e && c.rate == rate && c.sample_size == size) return c;
  }
  throw Error(ErrorCode::InvalidInput, "no such simulation cell");
}

Clustering load_truth(const SimulationConfig& cfg) {
  if (!cfg.truth.file.empty()) {
    return Clustering::from_membership(read_membership_csv(cfg.truth.file).membership);
  }
  Rng rng(cfg.master_seed, stream_id(kTruthStream, 0, 0, 0));
  return generate_cluster_truth(cfg.truth.synthetic, rng);
}

SimulationReport run_simulation(const Clustering& truth, const SimulationConfig& cfg,
                                unsigned threads) {
  validate(cfg);
  const std::size_t n_rates = cfg.misattribution_rates.size();
  const std::size_t n_sizes = cfg.sample_sizes.size();
  const std::size_t n_est = cfg.estimators.size();
  const std::size_t reps = cfg.repetitions;

  struct TaskResult {
    PrecisionRecall oracle;
    // [size][estimator]
    std::vector<std::optional<double>> values;
    std::vector<std::string> errors;
  };
  std::vector<TaskResult> results(n_rates * reps);

  parallel_for(results.size(), threads, [&](std::size_t task) {
    const std::size_t ri = task / reps;
    const std::size_t rep = task % reps;
    auto& out = results[task];
    out.values.assign(n_sizes * n_est, std::nullopt);
    out.errors.assign(n_sizes * n_est, std::string());

    Rng corrupt_rng(cfg.master_seed, stream_id(kCorruptStream, ri, 0, rep));
    const Clustering pred = inject_misattribution(truth, cfg.misattribution_rates[ri], corrupt_rng);
    out.oracle = exact_precision_recall(truth, pred);

    for (std::size_t si = 0; si < n_sizes; ++si) {
      Rng sample_rng(cfg.master_seed, stream_id(kSampleStream, ri, si, rep));
      const ClusterSample sample =
          sample_clusters(truth, cfg.sample_sizes[si], WeightScheme::ClusterSize, sample_rng);
      for (std::size_t ei = 0; ei < n_est; ++ei) {
        const std::size_t slot = si * n_est + ei;
        try {
          out.values[slot] = evaluate_sim_estimator(cfg.estimators[ei], pred, sample);
        } catch (const Error& err) {
          if (err.code() == ErrorCode::Internal || err.code() == ErrorCode::Overflow) throw;
          out.errors[slot] = std::string(error_name(err.code()));
        }
      }
    }
  });

  SimulationReport report;
  report.config = cfg;
  report.truth_mentions = truth.universe_size();
  report.truth_clusters = truth.cluster_count();
  for (std::size_t ei = 0; ei < n_est; ++ei) {
    for (std::size_t ri = 0; ri < n_rates; ++ri) {
      for (std::size_t si = 0; si < n_sizes; ++si) {
        SimulationCell cell;
        cell.estimator = cfg.estimators[ei];
        cell.rate = cfg.misattribution_rates[ri];
        cell.sample_size = cfg.sample_sizes[si];
        const bool recall = metric_of(cell.estimator) == Metric::Recall;
        CompensatedSum op, orc;
        for (std::size_t rep = 0; rep < reps; ++rep) {
          const auto& r = results[ri * reps + rep];
          const std::size_t slot = si * n_est + ei;
          cell.estimates.push_back(r.values[slot]);
          cell.errors.push_back(r.errors[slot]);
          cell.oracle.push_back(recall ? r.oracle.recall : r.oracle.precision);
          op.add(r.oracle.precision);
          orc.add(r.oracle.recall);
        }
        cell.oracle_precision_mean = op.value() / static_cast<double>(reps);
        cell.oracle_recall_mean = orc.value() / static_cast<double>(reps);
        cell.summary = summarize(cell.estimates, cell.oracle);
        for (const auto& e : cell.errors) {
          if (!e.empty()) ++cell.summary.failures[e];
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }
  return report;
}

SimulationReport run_simulation(const SimulationConfig& cfg, unsigned threads) {
  validate(cfg);
  return run_simulation(load_truth(cfg), cfg, threads);
}

SyntheticPopulation seeded_population(const SyntheticPersonConfig& cfg, std::uint64_t seed) {
  Rng rng(seed, stream_id(kPopulationStream, 0, 0, 0));
  return generate_synthetic_population(cfg, rng);
}

BenchmarkResult run_benchmark_bias_experiment(const BenchmarkConfig& cfg, unsigned threads) {
  validate(cfg.population);
  if (cfg.repetitions == 0) throw Error(ErrorCode::SchemaError, "repetitions: must be positive");
  if (cfg.records_per_sample == 0) {
    throw Error(ErrorCode::SchemaError, "records_per_sample: must be positive");
  }
  const SyntheticPopulation pop = seeded_population(cfg.population, cfg.seed);
  const Clustering pred =
      cfg.matcher == MatcherKind::Rules ? rule_based_matcher(pop.records) : pop.truth;

  BenchmarkResult result;
  result.records = pop.records.size();
  result.truth_clusters = pop.truth.cluster_count();
  result.oracle = exact_precision_recall(pop.truth, pred);
  result.naive.assign(cfg.repetitions, std::nullopt);
  result.adjusted.assign(cfg.repetitions, std::nullopt);
  std::vector<std::string> naive_err(cfg.repetitions), adjusted_err(cfg.repetitions);

  parallel_for(cfg.repetitions, threads, [&](std::size_t rep) {
    Rng rng(cfg.seed, stream_id(kBenchmarkSampleStream, 0, 0, rep));
    const ClusterSample sample =
        sample_clusters(pop.truth, cfg.records_per_sample, WeightScheme::ClusterSize, rng);
    try {
      result.naive[rep] = evaluate_sim_estimator(SimEstimator::PNaive, pred, sample);
    } catch (const Error& err) {
      naive_err[rep] = std::string(error_name(err.code()));
    }
    try {
      result.adjusted[rep] = evaluate_sim_estimator(SimEstimator::PClusterBlock, pred, sample);
    } catch (const Error& err) {
      adjusted_err[rep] = std::string(error_name(err.code()));
    }
  });

  const std::vector<double> oracle(cfg.repetitions, result.oracle.precision);
  result.naive_summary = summarize(result.naive, oracle);
  result.adjusted_summary = summarize(result.adjusted, oracle);
  for (const auto& e : naive_err) {
    if (!e.empty()) ++result.naive_summary.failures[e];
  }
  for (const auto& e : adjusted_err) {
    if (!e.empty()) ++result.adjusted_summary.failures[e];
  }
  return result;
}

}  // namespace pairest
