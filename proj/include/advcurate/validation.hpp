#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "advcurate/curation.hpp"
#include "advcurate/label_matrix.hpp"

namespace advcurate {

inline constexpr double kDefaultGamma = 0.05;

enum class Verdict { valid_adversarial, invalid };

std::string_view to_string(Verdict verdict);

double accuracy(std::span<const int> true_labels, std::span<const int> weak_labels);

/// 1-based average ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

struct SpearmanResult {
  double rho = 0.0;
  double p_value = 1.0;
  bool degenerate = false;  // all values equal
};

/// Spearman correlation between dataset position 1..N and `values`.
/// Throws DomainError for N < 3.
SpearmanResult spearman(std::span<const double> values);

/// Two-sided p-value of a Spearman coefficient over N items, through
/// t = rho * sqrt((N - 2) / (1 - rho^2)) and Student's t with N - 2 dof.
double spearman_p_value(double rho, std::size_t n);

Verdict validity_verdict(double rho, double p_value, double gamma = kDefaultGamma);

/// 1.64 * sqrt(acc * (1 - acc) / size): half-width of a 90% normal-approx
/// binomial interval.
double binomial_ci_halfwidth(double acc, std::size_t size);

struct ValidationReport {
  std::vector<std::size_t> sizes;
  std::vector<double> accuracies;
  std::vector<double> ci_halfwidths;
  double rho = 0.0;
  double p_value = 1.0;
  double gamma = kDefaultGamma;
  bool degenerate = false;
  Verdict verdict = Verdict::invalid;
};

ValidationReport validate_sequence(const CuratedSequence& seq, const GroundTruth& truth,
                                   double gamma = kDefaultGamma);

}  // namespace advcurate
