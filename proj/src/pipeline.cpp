#include "advcurate/pipeline.hpp"

#include <charconv>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "advcurate/errors.hpp"

namespace advcurate {

namespace {

using json = nlohmann::json;

json config_json(const PipelineConfig& c) {
  return {{"delta", c.delta},
          {"alpha", c.alpha},
          {"gamma", c.gamma},
          {"num_datasets", c.num_datasets},
          {"labeler", to_string(c.labeler)},
          {"skip_pruning", c.skip_pruning}};
}

json report_body(const ValidationReport& r) {
  return {{"sizes", r.sizes},
          {"accuracies", r.accuracies},
          {"ci_halfwidths", r.ci_halfwidths},
          {"rho", r.rho},
          {"p_value", r.p_value},
          {"gamma", r.gamma},
          {"degenerate", r.degenerate},
          {"verdict", to_string(r.verdict)}};
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::filesystem::filesystem_error("cannot write artifact", path,
                                            std::make_error_code(std::errc::permission_denied));
  }
  out << contents;
}

}  // namespace

void PipelineConfig::validate() const {
  if (!(delta >= 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in [0, 1]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in (0, 1)");
  if (num_datasets < 1) throw ConfigError("number of datasets must be at least 1");
}

std::string_view to_string(OrderingKey key) {
  return key == OrderingKey::ci_lower_bound ? "ci_lower_bound" : "raw_confidence";
}

double PipelineResult::mean_confidence() const {
  double total = 0.0;
  for (const auto& l : labels) total += l.confidence;
  return labels.empty() ? 0.0 : total / static_cast<double>(labels.size());
}

double PipelineResult::mean_lower_bound() const {
  double total = 0.0;
  for (const auto& ci : intervals) total += ci.lower;
  return intervals.empty() ? 0.0 : total / static_cast<double>(intervals.size());
}

PipelineResult run_pipeline(const LabelMatrix& m, const PipelineConfig& config, const GroundTruth* truth,
                            OrderingKey key) {
  config.validate();
  if (config.num_datasets > m.num_samples()) {
    throw ConfigError("number of datasets (" + std::to_string(config.num_datasets) +
                      ") exceeds the number of samples (" + std::to_string(m.num_samples()) + ")");
  }
  if (truth) truth->check_against(m);

  std::optional<PruneResult> pruning;
  std::vector<std::size_t> kept(m.num_lfs());
  std::iota(kept.begin(), kept.end(), std::size_t{0});
  if (!config.skip_pruning) {
    pruning = prune_detailed(m, config.delta);
    kept = pruning->kept;
  }
  LabelMatrix labeled = m.restrict_to(kept);
  WeightVector weights = config.labeler == LabelerMethod::majority_vote ? majority_weights(labeled)
                                                                         : fit_generative_weights(labeled);
  auto labels = combine_all(labeled, weights);
  auto intervals = intervals_for_matrix(labeled, weights, config.alpha);

  std::vector<double> keys(labels.size());
  std::vector<int> estimated(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    keys[i] = key == OrderingKey::ci_lower_bound ? intervals[i].lower : labels[i].confidence;
    estimated[i] = labels[i].label;
  }
  auto ordering = order_samples(keys);
  auto sequence = curate(std::move(ordering), config.num_datasets, std::move(estimated), std::move(keys));

  std::optional<ValidationReport> report;
  if (truth) report = validate_sequence(sequence, *truth, config.gamma);

  return PipelineResult{config,
                        key,
                        m.lf_names(),
                        std::move(pruning),
                        std::move(kept),
                        std::move(labeled),
                        std::move(weights),
                        std::move(labels),
                        std::move(intervals),
                        std::move(sequence),
                        std::move(report)};
}

std::vector<ComparativeCell> run_comparatives(const LabelMatrix& m, const PipelineConfig& config,
                                              const GroundTruth& truth) {
  struct Variant {
    const char* name;
    OrderingKey key;
    bool pruned;
  };
  constexpr Variant variants[] = {
      {"PL Conf w/ all LFs", OrderingKey::raw_confidence, false},
      {"PL Conf w/ Indep. LFs", OrderingKey::raw_confidence, true},
      {"CI LB w/ all LFs", OrderingKey::ci_lower_bound, false},
      {"CI LB w/ Indep. LFs", OrderingKey::ci_lower_bound, true},
  };
  std::vector<ComparativeCell> cells;
  for (const auto& v : variants) {
    PipelineConfig c = config;
    c.skip_pruning = !v.pruned;
    auto result = run_pipeline(m, c, &truth, v.key);
    cells.push_back(ComparativeCell{v.name, v.key, v.pruned, std::move(*result.report)});
  }
  return cells;
}

std::string prune_json(const std::vector<std::string>& names, const PruneResult& pruning) {
  if (names.size() != pruning.correlations.size()) throw DomainError("one name per LF is required");
  const std::size_t num_lfs = names.size();
  json doc;
  doc["delta"] = pruning.graph.threshold();
  doc["lf_names"] = names;
  std::vector<std::string> kept;
  std::vector<std::string> removed;
  std::vector<char> is_kept(num_lfs, 0);
  for (auto j : pruning.kept) is_kept[j] = 1;
  for (std::size_t j = 0; j < num_lfs; ++j) (is_kept[j] ? kept : removed).push_back(names[j]);
  doc["kept"] = kept;
  doc["kept_indices"] = pruning.kept;
  doc["removed"] = removed;

  json corr = json::array();
  for (std::size_t i = 0; i < pruning.correlations.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < pruning.correlations.size(); ++j) {
      const auto c = pruning.correlations.at(i, j);
      row.push_back(c ? json(*c) : json(nullptr));
    }
    corr.push_back(std::move(row));
  }
  doc["correlations"] = std::move(corr);

  json edges = json::array();
  for (const auto& [i, j] : pruning.graph.edges()) edges.push_back({i, j});
  doc["edges"] = std::move(edges);

  json cliques = json::array();
  for (const auto& c : pruning.cliques) {
    json members = json::array();
    for (auto v : c) members.push_back(names[v]);
    cliques.push_back(std::move(members));
  }
  doc["cliques"] = std::move(cliques);

  json ranking = json::array();
  for (auto j : pruning.ranking.order) {
    ranking.push_back({{"lf", names[j]},
                       {"index", j},
                       {"clique_count", pruning.ranking.clique_membership_counts[j]},
                       {"coverage", pruning.ranking.coverages[j]}});
  }
  doc["ranking"] = std::move(ranking);
  return doc.dump(2) + "\n";
}

std::string labels_json(const std::vector<ProbabilisticLabel>& labels) {
  json doc = json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    doc.push_back({{"index", i},
                   {"label", labels[i].label},
                   {"confidence", labels[i].confidence},
                   {"n", labels[i].vote_count}});
  }
  return doc.dump() + "\n";
}

std::string intervals_json(const std::vector<ProbabilisticLabel>& labels,
                           const std::vector<ConfidenceInterval>& intervals) {
  if (labels.size() != intervals.size()) throw DomainError("labels and intervals differ in length");
  json doc = json::array();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    doc.push_back({{"index", i},
                   {"label", labels[i].label},
                   {"confidence", labels[i].confidence},
                   {"n", intervals[i].n},
                   {"s", intervals[i].s},
                   {"theta_l", intervals[i].lower},
                   {"theta_u", intervals[i].upper}});
  }
  return doc.dump() + "\n";
}

std::string curation_json(const CuratedSequence& seq) {
  json doc;
  doc["N"] = seq.num_datasets();
  doc["ordering"] = seq.ordering;
  json datasets = json::array();
  for (std::size_t n = 1; n <= seq.num_datasets(); ++n) {
    const auto idx = seq.dataset(n);
    std::vector<int> labels;
    labels.reserve(idx.size());
    for (auto i : idx) labels.push_back(seq.labels[i]);
    datasets.push_back({{"n", n},
                        {"size", idx.size()},
                        {"indices", std::vector<std::size_t>(idx.begin(), idx.end())},
                        {"labels", std::move(labels)}});
  }
  doc["datasets"] = std::move(datasets);
  return doc.dump() + "\n";
}

std::string report_json(const PipelineResult& result) {
  json doc;
  doc["config"] = config_json(result.config);
  doc["ordering_key"] = to_string(result.ordering_key);
  doc["num_samples"] = result.labels.size();
  doc["kept_lfs"] = result.labeled_matrix.lf_names();
  doc["mean_confidence"] = result.mean_confidence();
  doc["mean_theta_l"] = result.mean_lower_bound();
  doc["validation"] = result.report ? report_body(*result.report) : json(nullptr);
  return doc.dump(2) + "\n";
}

std::string plotdata_csv(const ValidationReport& report, std::size_t num_samples) {
  std::string out = "dataset,fraction,size,accuracy,halfwidth\n";
  for (std::size_t n = 0; n < report.accuracies.size(); ++n) {
    out += std::to_string(n + 1) + "," +
           shortest(static_cast<double>(report.sizes[n]) / static_cast<double>(num_samples)) + "," +
           std::to_string(report.sizes[n]) + "," + shortest(report.accuracies[n]) + "," +
           shortest(report.ci_halfwidths[n]) + "\n";
  }
  return out;
}

std::string comparatives_json(const std::vector<ComparativeCell>& cells) {
  json doc = json::array();
  for (const auto& c : cells) {
    doc.push_back({{"name", c.name},
                   {"ordering_key", to_string(c.key)},
                   {"independent_lfs", c.pruned},
                   {"rho", c.report.rho},
                   {"p_value", c.report.p_value},
                   {"verdict", to_string(c.report.verdict)},
                   {"accuracies", c.report.accuracies}});
  }
  return doc.dump(2) + "\n";
}

std::string manifest_json(const PipelineResult& result, const std::string& input_name,
                          const std::vector<std::string>& files) {
  json doc;
  doc["tool"] = "advcurate";
  doc["input"] = input_name;
  doc["config"] = config_json(result.config);
  doc["ordering_key"] = to_string(result.ordering_key);
  doc["num_samples"] = result.labels.size();
  doc["num_lfs"] = result.input_lf_names.size();
  doc["kept_lfs"] = result.labeled_matrix.lf_names();
  doc["verdict"] = result.report ? json(to_string(result.report->verdict)) : json(nullptr);
  doc["files"] = files;
  return doc.dump(2) + "\n";
}

std::vector<std::string> write_artifacts(const PipelineResult& result, const std::filesystem::path& out_dir,
                                         const std::string& input_name) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> files;
  auto emit = [&](const char* name, const std::string& contents) {
    write_file(out_dir / name, contents);
    files.emplace_back(name);
  };
  if (result.pruning) emit(artifacts::kPrune, prune_json(result.input_lf_names, *result.pruning));
  emit(artifacts::kLabels, labels_json(result.labels));
  emit(artifacts::kIntervals, intervals_json(result.labels, result.intervals));
  emit(artifacts::kCuration, curation_json(result.sequence));
  emit(artifacts::kReport, report_json(result));
  if (result.report) emit(artifacts::kPlotData, plotdata_csv(*result.report, result.labels.size()));
  files.emplace_back(artifacts::kManifest);
  write_file(out_dir / artifacts::kManifest, manifest_json(result, input_name, files));
  return files;
}

}  // namespace advcurate
