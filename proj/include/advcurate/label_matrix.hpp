#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace advcurate {

/// Verdict value emitted by a labeling function that declines to vote.
inline constexpr int kAbstain = 0;

/// Dense table of labeling-function verdicts, one row per sample and one
/// column per labeling function. Entries are 0 (abstain) or a class in 1..K.
/// Immutable after construction.
class LabelMatrix {
 public:
  /// `entries` is row-major with `entries.size() == num_samples * lf_names.size()`.
  /// Throws DomainError when any invariant is violated.
  LabelMatrix(std::vector<std::string> lf_names, int num_classes, std::vector<int> entries);

  /// Builds from nested rows; every row must have `lf_names.size()` entries.
  static LabelMatrix from_rows(std::vector<std::string> lf_names, int num_classes,
                               const std::vector<std::vector<int>>& rows);

  std::size_t num_samples() const noexcept { return num_samples_; }
  std::size_t num_lfs() const noexcept { return lf_names_.size(); }
  int num_classes() const noexcept { return num_classes_; }
  const std::vector<std::string>& lf_names() const noexcept { return lf_names_; }
  const std::vector<int>& entries() const noexcept { return entries_; }

  int at(std::size_t sample, std::size_t lf) const;
  std::span<const int> row(std::size_t sample) const;
  /// Column `lf` widened to doubles, abstains included as 0.
  std::vector<double> column(std::size_t lf) const;

  /// Keeps only the listed columns, in the given order.
  LabelMatrix restrict_to(std::span<const std::size_t> lf_indices) const;

  friend bool operator==(const LabelMatrix&, const LabelMatrix&) = default;

 private:
  std::vector<std::string> lf_names_;
  int num_classes_;
  std::vector<int> entries_;
  std::size_t num_samples_;
};

/// True labels in 1..K, one per sample. Only available in evaluation runs.
struct GroundTruth {
  std::vector<int> labels;

  /// Throws DomainError unless sizes match and every label is in 1..K.
  void check_against(const LabelMatrix& m) const;
};

enum class MatrixFormat { csv, json };

struct LoadedMatrix {
  LabelMatrix matrix;
  std::optional<GroundTruth> truth;  // JSON "true_labels", when present
};

/// Parses a label matrix. K is the declared `#classes=K` / "num_classes"
/// value when present, else the largest verdict (at least 2).
/// Throws ParseError naming the row/column of the first problem.
LoadedMatrix load_label_matrix(std::istream& source, MatrixFormat format);
LoadedMatrix load_label_matrix(const std::filesystem::path& path);

/// Format by extension: ".json" is JSON, everything else CSV.
MatrixFormat format_for_path(const std::filesystem::path& path);

/// Writes `m` so that load_label_matrix reproduces it exactly. K is always
/// written explicitly. Truth is embedded for JSON and ignored for CSV.
void write_label_matrix(std::ostream& out, const LabelMatrix& m, MatrixFormat format,
                        const GroundTruth* truth = nullptr);

/// Ground truth from a JSON array, a JSON object with "true_labels", or a
/// one-column CSV with a header line.
GroundTruth load_ground_truth(std::istream& source, MatrixFormat format);
GroundTruth load_ground_truth(const std::filesystem::path& path);
void write_ground_truth_csv(std::ostream& out, const GroundTruth& truth);

/// Fraction of samples on which labeling function `lf_index` does not abstain.
double coverage(const LabelMatrix& m, std::size_t lf_index);

}  // namespace advcurate
