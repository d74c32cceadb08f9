#include <gtest/gtest.h>

#include "pairest/error.hpp"
#include "pairest/config.hpp"
#include "pairest/report.hpp"

using namespace pairest;

namespace {

std::string schema_message(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SchemaError) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error raised";
  return "";
}

}  // namespace

TEST(KeyValues, CommentsAndWhitespace) {
  const auto kv = parse_key_values("# head\n  a = 1 \n\nb=x y # tail\n", "t");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv.at("a").value, "1");
  EXPECT_EQ(kv.at("a").line, 2u);
  EXPECT_EQ(kv.at("b").value, "x y");
}

TEST(KeyValues, MalformedAndDuplicate) {
  for (const char* text : {"a 1\n", "= 1\n", "a = 1\na = 2\n"}) {
    try {
      parse_key_values(text, "kv.cfg");
      ADD_FAILURE() << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
      EXPECT_NE(std::string(e.what()).find("kv.cfg"), std::string::npos);
    }
  }
}

TEST(SimulationConfig, FullFile) {
  const auto cfg = parse_simulation_config(
      "schema_version = 1\nkind = simulation\ntruth_mentions = 2000\n"
      "truth_size_exponent = 2.5\ntruth_max_cluster_size = 20\n"
      "misattribution_rates = 0.1, 0.2\nsample_sizes = 10,20\nrepetitions = 7\n"
      "estimators = R_naive, P_cluster_block\nmaster_seed = 99\n",
      "s");
  EXPECT_EQ(cfg.truth.synthetic.mentions, 2000u);
  EXPECT_EQ(cfg.truth.synthetic.size_exponent, 2.5);
  EXPECT_EQ(cfg.misattribution_rates, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(cfg.sample_sizes, (std::vector<std::size_t>{10, 20}));
  EXPECT_EQ(cfg.repetitions, 7u);
  EXPECT_EQ(cfg.estimators, (std::vector<SimEstimator>{SimEstimator::RNaive, SimEstimator::PClusterBlock}));
  EXPECT_EQ(cfg.master_seed, 99u);
}

TEST(SimulationConfig, DefaultsAndTruthFile) {
  const auto cfg = parse_simulation_config(
      "schema_version = 1\nkind = simulation\ntruth_file = t.csv\n", "s", "/data/run");
  EXPECT_EQ(cfg.truth.file, std::filesystem::path("/data/run/t.csv"));
  EXPECT_EQ(cfg.repetitions, 100u);
  EXPECT_EQ(cfg.sample_sizes, (std::vector<std::size_t>{100, 200, 400}));
}

TEST(SimulationConfig, ProblemsReportedFieldByField) {
  const auto msg = schema_message([] {
    parse_simulation_config(
        "schema_version = 1\nkind = simulation\nrepetitions = many\n"
        "misattribution_rates = 0.1, 2\nestimators = P_magic\ncolour = blue\n",
        "bad.cfg");
  });
  EXPECT_NE(msg.find("bad.cfg"), std::string::npos);
  EXPECT_NE(msg.find("repetitions (line 3)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("misattribution_rates"), std::string::npos) << msg;
  EXPECT_NE(msg.find("estimators (line 5)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("colour (line 6): unknown field"), std::string::npos) << msg;
}

TEST(SimulationConfig, HeaderRequired) {
  EXPECT_NE(schema_message([] { parse_simulation_config("kind = simulation\n", "h"); })
                .find("schema_version"),
            std::string::npos);
  EXPECT_NE(schema_message([] {
              parse_simulation_config("schema_version = 2\nkind = simulation\n", "h");
            }).find("schema_version (line 1)"),
            std::string::npos);
  EXPECT_NE(schema_message([] {
              parse_simulation_config("schema_version = 1\nkind = synth\n", "h");
            }).find("kind (line 2)"),
            std::string::npos);
}

TEST(SynthConfig, Fields) {
  const auto cfg = parse_synth_config(
      "schema_version = 1\nkind = synth\npopulation_size = 50\nduplication_rate = 0.3\n"
      "noise_first_name = 0\nfirst_name_zipf = 1.1\nseed = 8\n",
      "s");
  EXPECT_EQ(cfg.population.population_size, 50u);
  EXPECT_EQ(cfg.population.duplication_rate, 0.3);
  EXPECT_EQ(cfg.population.noise.first_name, 0.0);
  EXPECT_EQ(cfg.population.noise.last_name, 0.2);
  EXPECT_EQ(cfg.population.first_name_zipf, 1.1);
  EXPECT_EQ(cfg.seed, 8u);
  const auto msg = schema_message([] {
    parse_synth_config("schema_version = 1\nkind = synth\nduplication_rate = 1\nnoise_birth_day = -1\n",
                       "s");
  });
  EXPECT_NE(msg.find("duplication_rate (line 3)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("noise_birth_day (line 4)"), std::string::npos) << msg;
}

TEST(Figure1Config, Fields) {
  const auto cfg = parse_figure1_config(
      "schema_version = 1\nkind = figure1\nmatcher = truth\nrepetitions = 10\n"
      "records_per_sample = 30\nseed = 2\n",
      "f");
  EXPECT_EQ(cfg.matcher, MatcherKind::Truth);
  EXPECT_EQ(cfg.repetitions, 10u);
  EXPECT_EQ(cfg.records_per_sample, 30u);
  EXPECT_EQ(cfg.population.population_size, 10000u);
  const auto msg = schema_message([] {
    parse_figure1_config("schema_version = 1\nkind = figure1\nmatcher = fuzzy\nrepetitions = 0\n", "f");
  });
  EXPECT_NE(msg.find("matcher (line 3)"), std::string::npos) << msg;
  EXPECT_NE(msg.find("repetitions (line 4)"), std::string::npos) << msg;
}

TEST(ConfigEcho, RoundTripsThroughJson) {
  SimulationConfig cfg;
  const auto j = to_json(cfg);
  EXPECT_EQ(j["kind"], "simulation");
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["estimators"].size(), 5u);
  EXPECT_EQ(j["truth_mentions"], 100000);
}

TEST(ShippedConfigs, Parse) {
  const std::filesystem::path dir = PAIREST_SOURCE_DIR "/configs";
  const auto sim = read_simulation_config(dir / "table12.cfg");
  EXPECT_EQ(sim.repetitions, 100u);
  EXPECT_EQ(sim.misattribution_rates, (std::vector<double>{0.05, 0.10, 0.20}));
  EXPECT_EQ(read_figure1_config(dir / "figure1.cfg").repetitions, 5000u);
  EXPECT_EQ(read_synth_config(dir / "synth_default.cfg").population.population_size, 10000u);
}
