#include "advcurate/conf_intervals.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "advcurate/errors.hpp"
#include "advcurate/stat_kernels.hpp"

namespace advcurate {

int vote_count(const LabelMatrix& m, std::size_t sample) {
  const auto r = m.row(sample);
  return static_cast<int>(std::count_if(r.begin(), r.end(), [](int v) { return v != kAbstain; }));
}

double success_mass(const LabelMatrix& m, const WeightVector& w, std::size_t sample) {
  const auto label = combine(m, w, sample);
  if (label.vote_count == 0) return 0.0;
  return static_cast<double>(label.vote_count) * label.confidence;
}

ConfidenceInterval clopper_pearson(int n, double s, double alpha) {
  if (n < 0) throw DomainError("trial count must be non-negative");
  if (!(s >= 0.0) || s > static_cast<double>(n)) {
    throw DomainError("success mass " + std::to_string(s) + " is outside [0, " + std::to_string(n) + "]");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");

  ConfidenceInterval ci{0.0, 1.0, n, s, alpha};
  if (n == 0) return ci;
  const double trials = static_cast<double>(n);
  if (s > 0.0) ci.lower = stats::beta_quantile(alpha / 2.0, s, trials - s + 1.0);
  if (s < trials) ci.upper = stats::beta_quantile(1.0 - alpha / 2.0, s + 1.0, trials - s);
  return ci;
}

std::vector<ConfidenceInterval> intervals_for_matrix(const LabelMatrix& m, const WeightVector& w,
                                                     double alpha) {
  std::vector<ConfidenceInterval> out;
  out.reserve(m.num_samples());
  for (std::size_t i = 0; i < m.num_samples(); ++i) {
    const auto label = combine(m, w, i);
    const double s = label.vote_count == 0 ? 0.0 : label.vote_count * label.confidence;
    out.push_back(clopper_pearson(label.vote_count, s, alpha));
  }
  return out;
}

}  // namespace advcurate
