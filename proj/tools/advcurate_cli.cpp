// advcurate: curate adversarially ordered datasets from labeling-function verdicts.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "advcurate/errors.hpp"
#include "advcurate/label_matrix.hpp"
#include "advcurate/pipeline.hpp"
#include "advcurate/synth_bench.hpp"

namespace fs = std::filesystem;
using namespace advcurate;

namespace {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kIoError = 3,
  kParseError = 4,
  kNumericalError = 5,
};

struct Options {
  std::string input;
  std::string truth;
  std::string out;
  std::string labeler = "generative";
  PipelineConfig config;
  bool comparatives = false;
};

struct SynthOptions {
  std::string preset = "benchmark";
  std::string config_path;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "Label matrix (.csv or .json)")->required();
  cmd->add_option("--delta", o.config.delta, "Correlation threshold for dependency edges")
      ->capture_default_str();
}

void add_label_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--labeler", o.labeler, "Weighting scheme")
      ->check(CLI::IsMember({"majority", "majority_vote", "generative"}))
      ->capture_default_str();
  cmd->add_flag("--skip-pruning", o.config.skip_pruning, "Label with all LFs");
}

void add_curation_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--alpha", o.config.alpha, "Clopper-Pearson significance level")->capture_default_str();
  cmd->add_option("--num-datasets", o.config.num_datasets, "Number of nested datasets N")
      ->capture_default_str();
}

void add_validation_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--truth", o.truth, "Ground-truth labels (.csv or .json)");
  cmd->add_option("--gamma", o.config.gamma, "Significance threshold for the ordering")
      ->capture_default_str();
  cmd->add_flag("--comparatives", o.comparatives, "Also tabulate the four comparative orderings");
}

void write_or_print(const std::string& out_dir, const char* name, const std::string& contents) {
  if (out_dir.empty()) {
    std::cout << contents;
    return;
  }
  fs::create_directories(out_dir);
  std::ofstream f(fs::path(out_dir) / name, std::ios::binary | std::ios::trunc);
  if (!f) throw fs::filesystem_error("cannot write output", fs::path(out_dir) / name,
                                     std::make_error_code(std::errc::permission_denied));
  f << contents;
}

struct Inputs {
  LabelMatrix matrix;
  std::optional<GroundTruth> truth;
};

Inputs read_inputs(const Options& o) {
  if (!fs::exists(o.input)) {
    throw fs::filesystem_error("input file not found", fs::path(o.input),
                               std::make_error_code(std::errc::no_such_file_or_directory));
  }
  auto loaded = load_label_matrix(fs::path(o.input));
  std::optional<GroundTruth> truth = std::move(loaded.truth);
  if (!o.truth.empty()) {
    if (!fs::exists(o.truth)) {
      throw fs::filesystem_error("truth file not found", fs::path(o.truth),
                                 std::make_error_code(std::errc::no_such_file_or_directory));
    }
    truth = load_ground_truth(fs::path(o.truth));
  }
  if (truth) truth->check_against(loaded.matrix);
  return {std::move(loaded.matrix), std::move(truth)};
}

PipelineConfig resolved_config(const Options& o) {
  PipelineConfig c = o.config;
  c.labeler = o.labeler == "generative" ? LabelerMethod::generative : LabelerMethod::majority_vote;
  return c;
}

void print_comparatives(const std::vector<ComparativeCell>& cells) {
  std::cout << std::left << std::setw(24) << "approach" << std::right << std::setw(10) << "rho"
            << std::setw(12) << "p" << "  verdict\n";
  for (const auto& c : cells) {
    std::cout << std::left << std::setw(24) << c.name << std::right << std::fixed << std::setprecision(3)
              << std::setw(10) << c.report.rho << std::setw(12) << c.report.p_value << "  "
              << to_string(c.report.verdict) << "\n";
  }
  std::cout.unsetf(std::ios::floatfield);
}

int cmd_prune(const Options& o) {
  auto in = read_inputs(o);
  o.config.validate();
  const auto result = prune_detailed(in.matrix, o.config.delta);
  for (auto j : result.kept) std::cout << in.matrix.lf_names()[j] << "\n";
  if (!o.out.empty()) write_or_print(o.out, artifacts::kPrune, prune_json(in.matrix.lf_names(), result));
  return kOk;
}

int cmd_stage(const Options& o, const std::string& stage) {
  auto in = read_inputs(o);
  const auto result = run_pipeline(in.matrix, resolved_config(o), nullptr);
  if (stage == "label") {
    write_or_print(o.out, artifacts::kLabels, labels_json(result.labels));
  } else if (stage == "intervals") {
    write_or_print(o.out, artifacts::kIntervals, intervals_json(result.labels, result.intervals));
  } else {
    write_or_print(o.out, artifacts::kCuration, curation_json(result.sequence));
  }
  return kOk;
}

int cmd_validate(const Options& o) {
  auto in = read_inputs(o);
  if (!in.truth) throw ConfigError("validate needs ground truth: pass --truth or embed true_labels");
  const auto config = resolved_config(o);
  const auto result = run_pipeline(in.matrix, config, &*in.truth);
  const auto& r = *result.report;
  if (o.out.empty()) {
    std::cout << report_json(result);
  } else {
    write_or_print(o.out, artifacts::kReport, report_json(result));
    write_or_print(o.out, artifacts::kPlotData, plotdata_csv(r, result.labels.size()));
    std::cout << "rho=" << r.rho << " p=" << r.p_value << " verdict=" << to_string(r.verdict) << "\n";
  }
  if (o.comparatives) {
    const auto cells = run_comparatives(in.matrix, config, *in.truth);
    if (!o.out.empty()) write_or_print(o.out, artifacts::kComparatives, comparatives_json(cells));
    print_comparatives(cells);
  }
  return kOk;
}

int cmd_run(const Options& o) {
  auto in = read_inputs(o);
  const auto config = resolved_config(o);
  const auto result = run_pipeline(in.matrix, config, in.truth ? &*in.truth : nullptr);
  const auto files = write_artifacts(result, o.out, fs::path(o.input).filename().string());
  if (o.comparatives) {
    if (!in.truth) throw ConfigError("--comparatives needs ground truth");
    const auto cells = run_comparatives(in.matrix, config, *in.truth);
    write_or_print(o.out, artifacts::kComparatives, comparatives_json(cells));
    print_comparatives(cells);
  }
  std::cout << "wrote " << files.size() << " artifacts to " << o.out;
  if (result.report) {
    std::cout << " (rho=" << result.report->rho << ", p=" << result.report->p_value
              << ", verdict=" << to_string(result.report->verdict) << ")";
  }
  std::cout << "\n";
  return kOk;
}

synth::SynthConfig synth_config_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fs::filesystem_error("config file not found", fs::path(path),
                                      std::make_error_code(std::errc::no_such_file_or_directory));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid synth config: ") + e.what());
  }
  try {
    synth::SynthConfig cfg;
    cfg.num_samples = doc.at("num_samples").get<std::size_t>();
    cfg.num_classes = doc.value("num_classes", 2);
    cfg.class_prior = doc.value("class_prior", std::vector<double>{});
    cfg.hard_fraction = doc.value("hard_fraction", 0.0);
    cfg.seed = doc.value("seed", std::uint64_t{0});
    for (const auto& lf : doc.at("lfs")) {
      synth::LfSpec spec;
      spec.name = lf.value("name", std::string{});
      spec.accuracy = lf.value("accuracy", 0.8);
      spec.abstain_rate = lf.value("abstain_rate", 0.0);
      if (lf.contains("duplicate_of") && !lf["duplicate_of"].is_null()) {
        spec.duplicate_of = lf["duplicate_of"].get<std::size_t>();
      }
      if (lf.contains("hard_stratum_accuracy") && !lf["hard_stratum_accuracy"].is_null()) {
        spec.hard_stratum_accuracy = lf["hard_stratum_accuracy"].get<double>();
      }
      cfg.lfs.push_back(std::move(spec));
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid synth config: ") + e.what());
  }
}

int cmd_synth(const SynthOptions& o, bool seed_given) {
  synth::SynthConfig cfg;
  if (!o.config_path.empty()) {
    cfg = synth_config_from_json(o.config_path);
    if (seed_given) cfg.seed = o.seed;
  } else if (o.preset == "benchmark") {
    cfg = synth::benchmark_config(o.seed);
  } else if (o.preset == "independent") {
    cfg = synth::independent_config(o.seed);
  } else {
    cfg = synth::recovery_config(o.seed);
  }
  if (o.samples > 0) cfg.num_samples = o.samples;
  const auto corpus = synth::generate(cfg);

  fs::create_directories(o.out);
  if (o.format == "json") {
    std::ofstream f(fs::path(o.out) / "corpus.json", std::ios::binary | std::ios::trunc);
    write_label_matrix(f, corpus.matrix, MatrixFormat::json, &corpus.truth);
  } else {
    std::ofstream f(fs::path(o.out) / "corpus.csv", std::ios::binary | std::ios::trunc);
    write_label_matrix(f, corpus.matrix, MatrixFormat::csv);
    std::ofstream t(fs::path(o.out) / "truth.csv", std::ios::binary | std::ios::trunc);
    write_ground_truth_csv(t, corpus.truth);
  }
  std::cout << "generated " << corpus.matrix.num_samples() << " samples x " << corpus.matrix.num_lfs()
            << " LFs (seed " << cfg.seed << ") in " << o.out << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curate adversarially ordered natural datasets from labeling-function verdicts"};
  app.require_subcommand(1);

  Options opts;
  SynthOptions synth_opts;

  auto* synth_cmd = app.add_subcommand("synth", "Generate a seeded synthetic corpus");
  synth_cmd->add_option("--preset", synth_opts.preset, "Built-in configuration")
      ->check(CLI::IsMember({"benchmark", "independent", "recovery"}))
      ->capture_default_str();
  synth_cmd->add_option("--config", synth_opts.config_path, "JSON generator configuration");
  auto* seed_opt = synth_cmd->add_option("--seed", synth_opts.seed, "Random seed")->capture_default_str();
  synth_cmd->add_option("--samples", synth_opts.samples, "Override the number of samples");
  synth_cmd->add_option("--format", synth_opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  synth_cmd->add_option("--out", synth_opts.out, "Output directory")->required();

  auto* prune_cmd = app.add_subcommand("prune", "Select independent labeling functions");
  add_input_options(prune_cmd, opts);
  prune_cmd->add_option("--out", opts.out, "Directory for prune.json");

  auto* label_cmd = app.add_subcommand("label", "Emit probabilistic labels");
  auto* intervals_cmd = app.add_subcommand("intervals", "Emit Clopper-Pearson intervals per sample");
  auto* curate_cmd = app.add_subcommand("curate", "Emit the nested dataset manifest");
  for (auto* cmd : {label_cmd, intervals_cmd, curate_cmd}) {
    add_input_options(cmd, opts);
    add_label_options(cmd, opts);
    add_curation_options(cmd, opts);
    cmd->add_option("--out", opts.out, "Output directory (stdout when omitted)");
  }

  auto* validate_cmd = app.add_subcommand("validate", "Curate and validate against ground truth");
  add_input_options(validate_cmd, opts);
  add_label_options(validate_cmd, opts);
  add_curation_options(validate_cmd, opts);
  add_validation_options(validate_cmd, opts);
  validate_cmd->add_option("--out", opts.out, "Directory for report.json and plotdata.csv");

  auto* run_cmd = app.add_subcommand("run", "Run the full pipeline and write every artifact");
  add_input_options(run_cmd, opts);
  add_label_options(run_cmd, opts);
  add_curation_options(run_cmd, opts);
  add_validation_options(run_cmd, opts);
  run_cmd->add_option("--out", opts.out, "Run directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth_cmd->parsed()) return cmd_synth(synth_opts, seed_opt->count() > 0);
    if (prune_cmd->parsed()) return cmd_prune(opts);
    if (label_cmd->parsed()) return cmd_stage(opts, "label");
    if (intervals_cmd->parsed()) return cmd_stage(opts, "intervals");
    if (curate_cmd->parsed()) return cmd_stage(opts, "curate");
    if (validate_cmd->parsed()) return cmd_validate(opts);
    if (run_cmd->parsed()) return cmd_run(opts);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
  return kOk;
}
