#pragma once

#include <cstddef>
#include <vector>

#include "advcurate/label_matrix.hpp"
#include "advcurate/prob_labeling.hpp"

namespace advcurate {

inline constexpr double kDefaultAlpha = 0.05;

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 1.0;
  int n = 0;
  double s = 0.0;
  double alpha = kDefaultAlpha;

  double width() const noexcept { return upper - lower; }
};

/// Number of non-abstaining LFs on the sample.
int vote_count(const LabelMatrix& m, std::size_t sample);

/// n(x) times the softmax confidence of the estimated label.
double success_mass(const LabelMatrix& m, const WeightVector& w, std::size_t sample);

/// Clopper-Pearson bounds for a real-valued success count s out of n trials.
/// Throws DomainError unless 0 <= s <= n and alpha is in (0, 1).
ConfidenceInterval clopper_pearson(int n, double s, double alpha = kDefaultAlpha);

std::vector<ConfidenceInterval> intervals_for_matrix(const LabelMatrix& m, const WeightVector& w,
                                                     double alpha = kDefaultAlpha);

}  // namespace advcurate
