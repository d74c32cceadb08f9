#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "pairest/error.hpp"
#include "pairest/report.hpp"
#include "pairest/rng.hpp"
#include "pairest/simulation.hpp"
#include "pairest/synthetic.hpp"

using namespace pairest;

namespace {

SimulationConfig small_config() {
  SimulationConfig cfg;
  cfg.truth.synthetic = {5000, 2.3, 50};
  cfg.misattribution_rates = {0.0, 0.1};
  cfg.sample_sizes = {20, 50};
  cfg.repetitions = 12;
  cfg.master_seed = 3;
  return cfg;
}

}  // namespace

TEST(SimEstimators, Names) {
  for (auto e : kAllSimEstimators) EXPECT_EQ(parse_sim_estimator(to_string(e)), e);
  EXPECT_EQ(to_string(SimEstimator::PClusterBlock), "P_cluster_block");
  EXPECT_EQ(metric_of(SimEstimator::RRecord), Metric::Recall);
  try {
    parse_sim_estimator("P_magic");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_NE(std::string(e.what()).find("R_record"), std::string::npos);
  }
}

TEST(Summarize, BiasAndRmse) {
  const std::vector<std::optional<double>> est{0.5, std::nullopt, 0.7};
  const std::vector<double> oracle{0.4, 0.4, 0.6};
  const auto s = summarize(est, oracle);
  EXPECT_EQ(s.successes, 2u);
  EXPECT_DOUBLE_EQ(s.mean_estimate, 0.6);
  EXPECT_DOUBLE_EQ(s.bias, 0.1);
  EXPECT_DOUBLE_EQ(s.rmse, 0.1);
  const std::vector<std::optional<double>> none{std::nullopt};
  EXPECT_TRUE(std::isnan(summarize(none, std::vector<double>{0.4}).bias));
}

TEST(Simulation, RateZeroGivesExactOnes) {
  auto cfg = small_config();
  cfg.misattribution_rates = {0.0};
  cfg.repetitions = 1;
  const auto report = run_simulation(cfg);
  for (const auto& c : report.cells) {
    ASSERT_EQ(c.estimates.size(), 1u);
    ASSERT_TRUE(c.estimates[0]) << c.errors[0];
    EXPECT_EQ(c.oracle[0], 1.0);
    if (c.estimator == SimEstimator::PRecord) {
      // unbiased, but a sample mean rather than a ratio
      EXPECT_GT(*c.estimates[0], 0.0);
    } else {
      EXPECT_EQ(*c.estimates[0], 1.0) << to_string(c.estimator);
      EXPECT_EQ(c.summary.bias, 0.0);
    }
  }
}

TEST(Simulation, ReportShapeAndOrder) {
  const auto cfg = small_config();
  const auto report = run_simulation(cfg);
  EXPECT_EQ(report.truth_mentions, 5000u);
  ASSERT_EQ(report.cells.size(), 5u * 2u * 2u);
  EXPECT_EQ(report.cells[0].estimator, SimEstimator::PClusterBlock);
  EXPECT_EQ(report.cells[1].sample_size, 50u);
  EXPECT_EQ(report.cells[2].rate, 0.1);
  for (const auto& c : report.cells) {
    EXPECT_EQ(c.estimates.size(), cfg.repetitions);
    EXPECT_EQ(c.oracle.size(), cfg.repetitions);
    std::size_t failed = 0;
    for (const auto& [name, count] : c.summary.failures) failed += count;
    EXPECT_EQ(c.summary.successes + failed, cfg.repetitions);
    if (c.summary.successes > 0) {
      EXPECT_GE(c.summary.rmse * c.summary.rmse, c.summary.bias * c.summary.bias - 1e-15);
    }
  }
  const auto& cell = report.cell(SimEstimator::RNaive, 0.1, 20);
  EXPECT_EQ(cell.estimator, SimEstimator::RNaive);
}

TEST(Simulation, OraclesSharedAcrossSizes) {
  const auto report = run_simulation(small_config());
  const auto& a = report.cell(SimEstimator::PNaive, 0.1, 20);
  const auto& b = report.cell(SimEstimator::PNaive, 0.1, 50);
  EXPECT_EQ(a.oracle, b.oracle);
  EXPECT_EQ(report.cell(SimEstimator::PClusterBlock, 0.1, 20).oracle, a.oracle);
  EXPECT_LT(a.oracle_precision_mean, 1.0);
}

TEST(Simulation, ThreadCountDoesNotMatter) {
  const auto cfg = small_config();
  const auto one = run_simulation(cfg, 1);
  const auto eight = run_simulation(cfg, 8);
  std::ostringstream a, b;
  write_simulation_csv(a, one);
  write_simulation_csv(b, eight);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(simulation_json(one).dump(), simulation_json(eight).dump());
}

TEST(Simulation, SeedChangesResults) {
  auto cfg = small_config();
  const auto a = run_simulation(cfg);
  cfg.master_seed = 4;
  const auto b = run_simulation(cfg);
  EXPECT_NE(a.cell(SimEstimator::PNaive, 0.1, 50).estimates,
            b.cell(SimEstimator::PNaive, 0.1, 50).estimates);
}

TEST(Simulation, ValidationListsEveryField) {
  SimulationConfig cfg;
  cfg.misattribution_rates = {1.5};
  cfg.sample_sizes = {};
  cfg.repetitions = 0;
  const auto problems = config_problems(cfg);
  EXPECT_EQ(problems.size(), 3u);
  try {
    validate(cfg);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("misattribution_rates"), std::string::npos);
    EXPECT_NE(msg.find("sample_sizes"), std::string::npos);
    EXPECT_NE(msg.find("repetitions"), std::string::npos);
  }
}

TEST(Benchmark, PerfectMatcherGivesOnes) {
  BenchmarkConfig cfg;
  cfg.population.population_size = 2000;
  cfg.matcher = MatcherKind::Truth;
  cfg.repetitions = 1;
  const auto r = run_benchmark_bias_experiment(cfg);
  EXPECT_EQ(r.oracle.precision, 1.0);
  ASSERT_TRUE(r.naive[0]);
  ASSERT_TRUE(r.adjusted[0]);
  EXPECT_EQ(*r.naive[0], 1.0);
  EXPECT_EQ(*r.adjusted[0], 1.0);
}

TEST(Benchmark, NaiveIsOptimistic) {
  BenchmarkConfig cfg;
  cfg.repetitions = 300;
  const auto r = run_benchmark_bias_experiment(cfg, 4);
  EXPECT_EQ(r.records, 10000u);
  EXPECT_GT(r.naive_summary.bias, 0.2);
  EXPECT_LT(std::abs(r.adjusted_summary.bias), 0.05);
  const auto again = run_benchmark_bias_experiment(cfg, 1);
  EXPECT_EQ(again.adjusted, r.adjusted);
}

TEST(Benchmark, SeededPopulationIsReproducible) {
  SyntheticPersonConfig cfg;
  cfg.population_size = 300;
  EXPECT_EQ(seeded_population(cfg, 5).records, seeded_population(cfg, 5).records);
  EXPECT_NE(seeded_population(cfg, 5).records, seeded_population(cfg, 6).records);
}
