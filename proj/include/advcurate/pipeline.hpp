#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "advcurate/conf_intervals.hpp"
#include "advcurate/curation.hpp"
#include "advcurate/label_matrix.hpp"
#include "advcurate/lf_pruning.hpp"
#include "advcurate/prob_labeling.hpp"
#include "advcurate/validation.hpp"

namespace advcurate {

struct PipelineConfig {
  double delta = kDefaultDelta;
  double alpha = kDefaultAlpha;
  double gamma = kDefaultGamma;
  std::size_t num_datasets = kDefaultNumDatasets;
  LabelerMethod labeler = LabelerMethod::generative;
  bool skip_pruning = false;

  /// Throws ConfigError on out-of-range fields.
  void validate() const;
};

/// Which per-sample quantity drives the ordering.
enum class OrderingKey { ci_lower_bound, raw_confidence };

std::string_view to_string(OrderingKey key);

struct PipelineResult {
  PipelineConfig config;
  OrderingKey ordering_key = OrderingKey::ci_lower_bound;
  std::vector<std::string> input_lf_names;
  std::optional<PruneResult> pruning;  // absent when pruning is skipped
  std::vector<std::size_t> kept_lfs;
  LabelMatrix labeled_matrix;          // matrix restricted to kept_lfs
  WeightVector weights;
  std::vector<ProbabilisticLabel> labels;
  std::vector<ConfidenceInterval> intervals;
  CuratedSequence sequence;
  std::optional<ValidationReport> report;

  double mean_confidence() const;
  double mean_lower_bound() const;
};

/// prune (unless skipped) -> label -> intervals -> curate [-> validate].
PipelineResult run_pipeline(const LabelMatrix& m, const PipelineConfig& config,
                            const GroundTruth* truth = nullptr,
                            OrderingKey key = OrderingKey::ci_lower_bound);

struct ComparativeCell {
  std::string name;
  OrderingKey key;
  bool pruned;
  ValidationReport report;
};

/// Raw confidence vs CI lower bound ordering, each with all LFs and with the
/// independent subset. The last cell is the full approach.
std::vector<ComparativeCell> run_comparatives(const LabelMatrix& m, const PipelineConfig& config,
                                              const GroundTruth& truth);

/// Artifact file names inside a run directory.
namespace artifacts {
inline constexpr const char* kManifest = "manifest.json";
inline constexpr const char* kPrune = "prune.json";
inline constexpr const char* kLabels = "labels.json";
inline constexpr const char* kIntervals = "intervals.json";
inline constexpr const char* kCuration = "curation.json";
inline constexpr const char* kReport = "report.json";
inline constexpr const char* kPlotData = "plotdata.csv";
inline constexpr const char* kComparatives = "comparatives.json";
}  // namespace artifacts

// Serializers used by the CLI; each returns the exact file contents.
std::string prune_json(const std::vector<std::string>& lf_names, const PruneResult& pruning);
std::string labels_json(const std::vector<ProbabilisticLabel>& labels);
std::string intervals_json(const std::vector<ProbabilisticLabel>& labels,
                           const std::vector<ConfidenceInterval>& intervals);
std::string curation_json(const CuratedSequence& seq);
std::string report_json(const PipelineResult& result);
std::string plotdata_csv(const ValidationReport& report, std::size_t num_samples);
std::string comparatives_json(const std::vector<ComparativeCell>& cells);
std::string manifest_json(const PipelineResult& result, const std::string& input_name,
                          const std::vector<std::string>& files);

/// Writes every artifact of `result` into `out_dir` (created if missing).
/// Returns the file names written.
std::vector<std::string> write_artifacts(const PipelineResult& result,
                                         const std::filesystem::path& out_dir,
                                         const std::string& input_name);

}  // namespace advcurate
