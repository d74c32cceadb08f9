#include "pairest/cli.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pairest/config.hpp"
#include "pairest/csv.hpp"
#include "pairest/estimators.hpp"
#include "pairest/report.hpp"
#include "pairest/simulation.hpp"
#include "pairest/synthetic.hpp"

namespace pairest {

namespace fs = std::filesystem;

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::DuplicateMention:
    case ErrorCode::UniverseMismatch:
    case ErrorCode::UnknownMention:
    case ErrorCode::SchemaError:
    case ErrorCode::InvalidInput:
      return 2;
    case ErrorCode::InvalidDesign:
    case ErrorCode::InsufficientSample:
      return 3;
    case ErrorCode::NoPredictedLinks:
    case ErrorCode::NoTrueLinks:
    case ErrorCode::DegenerateRatio:
      return 4;
    case ErrorCode::Overflow:
    case ErrorCode::Internal:
      return 5;
  }
  return 5;
}

namespace {

struct ExactArgs {
  std::string truth, pred, format = "text", manifest;
};

struct EstimateArgs {
  std::string pred, sample, sampling_type, weights, metric = "precision", format = "text",
                                                    manifest;
  std::optional<std::uint64_t> fpc_t;
  bool clamp = false;
  bool allow_missing = false;
  double confidence = 0.95;
};

struct RunArgs {
  std::string config, out;
  unsigned threads = 1;
};

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

RunManifest start_manifest(std::string command) {
  RunManifest m;
  m.command = std::move(command);
  m.started_at = utc_timestamp();
  return m;
}

void finish_manifest(RunManifest& m, const std::string& path) {
  m.finished_at = utc_timestamp();
  write_text_file(path, dump(m.to_json()));
}

void cmd_exact(const ExactArgs& a, std::ostream& out) {
  RunManifest manifest = start_manifest("exact");
  const auto truth = Clustering::from_membership(read_membership_csv(a.truth).membership);
  const auto pred = Clustering::from_membership(read_membership_csv(a.pred).membership);
  const PairStats s = pair_stats(truth, pred);
  const PrecisionRecall pr = exact_precision_recall(truth, pred);
  if (a.format == "json") {
    nlohmann::json j{{"schema_version", kReportSchemaVersion},
                     {"command", "exact"},
                     {"precision", pr.precision},
                     {"recall", pr.recall},
                     {"matching_pairs", s.matching_pairs},
                     {"predicted_pairs", s.predicted_pairs},
                     {"common_pairs", s.common_pairs}};
    out << dump(j);
  } else {
    out << "precision " << format_double(pr.precision) << '\n'
        << "recall " << format_double(pr.recall) << '\n'
        << "matching_pairs " << s.matching_pairs << '\n'
        << "predicted_pairs " << s.predicted_pairs << '\n'
        << "common_pairs " << s.common_pairs << '\n';
  }
  if (!a.manifest.empty()) {
    manifest.config = {{"truth", a.truth}, {"prediction", a.pred}, {"format", a.format}};
    manifest.add_input(a.truth);
    manifest.add_input(a.pred);
    finish_manifest(manifest, a.manifest);
  }
}

void cmd_estimate(const EstimateArgs& a, std::ostream& out) {
  RunManifest manifest = start_manifest("estimate");
  if (!(a.confidence > 0.0 && a.confidence < 1.0)) {
    throw Error(ErrorCode::InvalidInput, "--confidence must lie strictly between 0 and 1");
  }
  SamplingDesign design;
  design.sampling_type = parse_sampling_type(a.sampling_type);
  design.population_size = a.fpc_t;
  const auto pred = Clustering::from_membership(read_membership_csv(a.pred).membership);
  const MembershipTable table = read_membership_csv(a.sample, /*allow_weight=*/true);
  if (table.weights) {
    if (!a.weights.empty()) {
      throw Error(ErrorCode::InvalidDesign,
                  "the sample has a weight column; drop --weights or the column");
    }
  } else if (a.weights.empty()) {
    throw Error(ErrorCode::InvalidDesign,
                "no weights: pass --weights \"uniform\" or \"cluster_size\", or add a weight "
                "column to the sample");
  } else {
    design.weights = parse_weight_scheme(a.weights);
  }
  const Metric metric = parse_metric(a.metric);
  const ClusterSample sample =
      make_sample(table.membership, pred, design, a.allow_missing, table.weights);
  const Estimate e = estimate(pred, sample, metric, EstimateOptions{.clamp = a.clamp});

  std::optional<double> lower, upper;
  if (e.std) {
    const boost::math::normal standard;
    const double z = boost::math::quantile(standard, 0.5 + a.confidence / 2.0);
    lower = e.value - z * *e.std;
    upper = e.value + z * *e.std;
    if (a.clamp) {
      lower = std::clamp(*lower, 0.0, 1.0);
      upper = std::clamp(*upper, 0.0, 1.0);
    }
  }
  const std::string weights_label = table.weights ? "column" : a.weights;
  if (a.format == "json") {
    nlohmann::json j{{"schema_version", kReportSchemaVersion},
                     {"command", "estimate"},
                     {"metric", to_string(metric)},
                     {"sampling_type", to_string(design.sampling_type)},
                     {"weights", weights_label},
                     {"value", json_number(e.value)},
                     {"std", json_number(e.std)},
                     {"n", e.n},
                     {"theta", e.theta},
                     {"confidence", a.confidence},
                     {"ci_lower", json_number(lower)},
                     {"ci_upper", json_number(upper)}};
    out << dump(j);
  } else {
    auto opt = [](const std::optional<double>& x) { return x ? format_double(*x) : "NA"; };
    out << "metric " << to_string(metric) << '\n'
        << "sampling_type " << to_string(design.sampling_type) << '\n'
        << "weights " << weights_label << '\n'
        << "value " << format_double(e.value) << '\n'
        << "std " << opt(e.std) << '\n'
        << "n " << e.n << '\n'
        << "theta " << format_double(e.theta) << '\n'
        << "confidence " << format_double(a.confidence) << '\n'
        << "ci_lower " << opt(lower) << '\n'
        << "ci_upper " << opt(upper) << '\n';
  }
  if (!a.manifest.empty()) {
    manifest.config = {{"prediction", a.pred},
                       {"sample", a.sample},
                       {"sampling_type", a.sampling_type},
                       {"weights", weights_label},
                       {"metric", a.metric},
                       {"fpc_T", a.fpc_t ? nlohmann::json(*a.fpc_t) : nlohmann::json(nullptr)},
                       {"clamp", a.clamp},
                       {"allow_missing", a.allow_missing},
                       {"confidence", a.confidence}};
    manifest.add_input(a.pred);
    manifest.add_input(a.sample);
    finish_manifest(manifest, a.manifest);
  }
}

void cmd_simulate(const RunArgs& a, std::ostream& out) {
  RunManifest manifest = start_manifest("simulate");
  const SimulationConfig cfg = read_simulation_config(a.config);
  const SimulationReport report = run_simulation(cfg, a.threads);
  fs::create_directories(a.out);
  const fs::path dir = a.out;
  std::ostringstream csv;
  write_simulation_csv(csv, report);
  write_text_file(dir / "report.csv", csv.str());
  write_text_file(dir / "report.json", dump(simulation_json(report)));

  manifest.config = to_json(cfg);
  manifest.config["threads"] = a.threads;
  manifest.seed = cfg.master_seed;
  manifest.add_input(a.config);
  if (!cfg.truth.file.empty()) manifest.add_input(cfg.truth.file);
  manifest.add_output(dir / "report.csv");
  manifest.add_output(dir / "report.json");
  finish_manifest(manifest, (dir / "manifest.json").string());
  out << "cells " << report.cells.size() << '\n'
      << "report_csv " << (dir / "report.csv").generic_string() << '\n'
      << "report_json " << (dir / "report.json").generic_string() << '\n';
}

void cmd_synth(const RunArgs& a, std::ostream& out) {
  RunManifest manifest = start_manifest("synth");
  const SynthConfig cfg = read_synth_config(a.config);
  const SyntheticPopulation pop = seeded_population(cfg.population, cfg.seed);
  const fs::path prefix = a.out;
  if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
  const fs::path attributes = prefix.string() + "_attributes.csv";
  const fs::path truth = prefix.string() + "_truth.csv";
  std::ostringstream attr_text, truth_text;
  write_attributes_csv(attr_text, pop.records);
  write_membership_csv(truth_text, pop.truth.to_membership());
  write_text_file(attributes, attr_text.str());
  write_text_file(truth, truth_text.str());

  manifest.config = to_json(cfg);
  manifest.seed = cfg.seed;
  manifest.add_input(a.config);
  manifest.add_output(attributes);
  manifest.add_output(truth);
  finish_manifest(manifest, prefix.string() + "_manifest.json");
  out << "records " << pop.records.size() << '\n'
      << "clusters " << pop.truth.cluster_count() << '\n'
      << "attributes " << attributes.generic_string() << '\n'
      << "truth " << truth.generic_string() << '\n';
}

void cmd_figure1(const RunArgs& a, std::ostream& out) {
  RunManifest manifest = start_manifest("figure1");
  const BenchmarkConfig cfg = read_figure1_config(a.config);
  const BenchmarkResult result = run_benchmark_bias_experiment(cfg, a.threads);
  fs::create_directories(a.out);
  const fs::path dir = a.out;
  std::ostringstream csv;
  write_figure1_csv(csv, result);
  write_text_file(dir / "figure1.csv", csv.str());
  write_text_file(dir / "figure1_summary.json", dump(figure1_summary_json(result, cfg)));

  manifest.config = to_json(cfg);
  manifest.config["threads"] = a.threads;
  manifest.seed = cfg.seed;
  manifest.add_input(a.config);
  manifest.add_output(dir / "figure1.csv");
  manifest.add_output(dir / "figure1_summary.json");
  finish_manifest(manifest, (dir / "manifest.json").string());
  out << "oracle_precision " << format_double(result.oracle.precision) << '\n'
      << "oracle_recall " << format_double(result.oracle.recall) << '\n'
      << "naive_bias " << format_double(result.naive_summary.bias) << '\n'
      << "naive_rmse " << format_double(result.naive_summary.rmse) << '\n'
      << "adjusted_bias " << format_double(result.adjusted_summary.bias) << '\n'
      << "adjusted_rmse " << format_double(result.adjusted_summary.rmse) << '\n';
}

void add_run_args(CLI::App* cmd, RunArgs& a, const char* out_help, bool threads) {
  cmd->add_option("config", a.config, "Config file")->required();
  cmd->add_option("out", a.out, out_help)->required();
  if (threads) cmd->add_option("--threads", a.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pairwise precision and recall estimation from sampled truth clusters", "pairest"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));

  ExactArgs exact;
  auto* c_exact = app.add_subcommand("exact", "Exact pairwise precision and recall");
  c_exact->add_option("truth", exact.truth, "Truth membership CSV")->required();
  c_exact->add_option("prediction", exact.pred, "Predicted membership CSV")->required();
  c_exact->add_option("--format", exact.format)->check(CLI::IsMember({"text", "json"}));
  c_exact->add_option("--manifest", exact.manifest, "Write a run manifest here");

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "Estimate precision or recall from a sample");
  c_est->add_option("prediction", est.pred, "Predicted membership CSV")->required();
  c_est->add_option("sample", est.sample, "Sampled truth clusters (membership CSV)")->required();
  c_est->add_option("--sampling-type", est.sampling_type,
                    "record, cluster, cluster_block or single_block")
      ->required();
  c_est->add_option("--weights", est.weights, "uniform or cluster_size");
  c_est->add_option("--metric", est.metric, "precision or recall");
  c_est->add_option("--fpc-T", est.fpc_t, "Population size for the finite-population correction");
  c_est->add_flag("--clamp", est.clamp, "Clamp the estimate into [0, 1]");
  c_est->add_option("--confidence", est.confidence, "Normal interval level");
  c_est->add_flag("--allow-missing", est.allow_missing,
                  "Drop sampled mentions absent from the prediction");
  c_est->add_option("--format", est.format)->check(CLI::IsMember({"text", "json"}));
  c_est->add_option("--manifest", est.manifest, "Write a run manifest here");

  RunArgs sim, synth, fig;
  add_run_args(app.add_subcommand("simulate", "Monte-Carlo simulation study"), sim,
               "Output directory", true);
  add_run_args(app.add_subcommand("synth", "Generate a synthetic person dataset"), synth,
               "Output path prefix", false);
  add_run_args(app.add_subcommand("figure1", "Naive versus adjusted benchmark precision"), fig,
               "Output directory", true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_exact) cmd_exact(exact, out);
    else if (*c_est) cmd_estimate(est, out);
    else if (app.got_subcommand("simulate")) cmd_simulate(sim, out);
    else if (app.got_subcommand("synth")) cmd_synth(synth, out);
    else if (app.got_subcommand("figure1")) cmd_figure1(fig, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 5;
  }
  return 0;
}

}  // namespace pairest
