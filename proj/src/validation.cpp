#include "advcurate/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "advcurate/errors.hpp"
#include "advcurate/stat_kernels.hpp"

namespace advcurate {

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::valid_adversarial ? "valid_adversarial" : "invalid";
}

double accuracy(std::span<const int> true_labels, std::span<const int> weak_labels) {
  if (true_labels.size() != weak_labels.size()) throw DomainError("accuracy: length mismatch");
  if (true_labels.empty()) throw DomainError("accuracy: empty label vectors");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < true_labels.size(); ++i) hits += true_labels[i] == weak_labels[i];
  return static_cast<double>(hits) / static_cast<double>(true_labels.size());
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t start = 0;
  while (start < idx.size()) {
    std::size_t end = start + 1;
    while (end < idx.size() && values[idx[end]] == values[idx[start]]) ++end;
    const double rank = 0.5 * static_cast<double>(start + end + 1);  // mean of start+1..end
    for (std::size_t k = start; k < end; ++k) ranks[idx[k]] = rank;
    start = end;
  }
  return ranks;
}

double spearman_p_value(double rho, std::size_t n) {
  if (n < 3) throw DomainError("spearman: need at least three values");
  if (!(rho >= -1.0 && rho <= 1.0)) throw DomainError("spearman: rho must lie in [-1, 1]");
  const double dof = static_cast<double>(n - 2);
  const double denom = 1.0 - rho * rho;
  const double t = denom <= 0.0 ? std::copysign(std::numeric_limits<double>::infinity(), rho)
                                : rho * std::sqrt(dof / denom);
  return stats::student_t_two_sided_p(t, static_cast<int>(n - 2));
}

SpearmanResult spearman(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 3) throw DomainError("spearman: need at least three values");
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    return {0.0, 1.0, true};
  }
  const auto ranks = average_ranks(values);
  std::vector<double> positions(n);
  std::iota(positions.begin(), positions.end(), 1.0);
  double rho = stats::pearson(positions, ranks).value_or(0.0);
  // Snap round-off so perfectly monotone sequences report exactly +/-1.
  if (std::fabs(std::fabs(rho) - 1.0) < 1e-12) rho = std::copysign(1.0, rho);
  return {rho, spearman_p_value(rho, n), false};
}

Verdict validity_verdict(double rho, double p_value, double gamma) {
  return (rho < 0.0 && p_value <= gamma) ? Verdict::valid_adversarial : Verdict::invalid;
}

double binomial_ci_halfwidth(double acc, std::size_t size) {
  if (size == 0) throw DomainError("binomial half-width: dataset size must be positive");
  if (!(acc >= 0.0 && acc <= 1.0)) throw DomainError("binomial half-width: accuracy must lie in [0, 1]");
  return 1.64 * std::sqrt(acc * (1.0 - acc) / static_cast<double>(size));
}

ValidationReport validate_sequence(const CuratedSequence& seq, const GroundTruth& truth, double gamma) {
  if (truth.labels.size() != seq.ordering.size()) {
    throw DomainError("ground truth does not cover every curated sample");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in (0, 1)");
  ValidationReport report;
  report.gamma = gamma;
  std::vector<int> y_true;
  std::vector<int> y_weak;
  std::size_t taken = 0;
  for (auto size : seq.prefix_sizes) {
    for (; taken < size; ++taken) {
      const auto i = seq.ordering[taken];
      y_true.push_back(truth.labels[i]);
      y_weak.push_back(seq.labels[i]);
    }
    const double acc = accuracy(y_true, y_weak);
    report.sizes.push_back(size);
    report.accuracies.push_back(acc);
    report.ci_halfwidths.push_back(binomial_ci_halfwidth(acc, size));
  }
  if (report.accuracies.size() >= 3) {
    const auto sp = spearman(report.accuracies);
    report.rho = sp.rho;
    report.p_value = sp.p_value;
    report.degenerate = sp.degenerate;
  } else {
    report.degenerate = true;
  }
  report.verdict = validity_verdict(report.rho, report.p_value, gamma);
  return report;
}

}  // namespace advcurate
