#include "advcurate/prob_labeling.hpp"

#include <algorithm>
#include <cmath>

#include "advcurate/errors.hpp"

namespace advcurate {

namespace {

constexpr double kMinAccuracy = 0.01;
constexpr double kMaxAccuracy = 0.99;

using Posteriors = std::vector<double>;  // row-major (samples x K)

Posteriors vote_fraction_posteriors(const LabelMatrix& m) {
  const auto k = static_cast<std::size_t>(m.num_classes());
  Posteriors q(m.num_samples() * k, 1.0 / static_cast<double>(k));
  for (std::size_t i = 0; i < m.num_samples(); ++i) {
    std::vector<double> counts(k, 0.0);
    double n = 0.0;
    for (int v : m.row(i)) {
      if (v == kAbstain) continue;
      counts[v - 1] += 1.0;
      n += 1.0;
    }
    if (n == 0.0) continue;
    for (std::size_t y = 0; y < k; ++y) q[i * k + y] = counts[y] / n;
  }
  return q;
}

std::vector<double> estimate_accuracies(const LabelMatrix& m, const Posteriors& q) {
  const auto k = static_cast<std::size_t>(m.num_classes());
  std::vector<double> agree(m.num_lfs(), 0.0);
  std::vector<double> voted(m.num_lfs(), 0.0);
  for (std::size_t i = 0; i < m.num_samples(); ++i) {
    const auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] == kAbstain) continue;
      agree[j] += q[i * k + static_cast<std::size_t>(r[j] - 1)];
      voted[j] += 1.0;
    }
  }
  std::vector<double> acc(m.num_lfs());
  for (std::size_t j = 0; j < acc.size(); ++j) {
    // An LF that never votes carries no information: chance accuracy, zero weight.
    const double a = voted[j] > 0.0 ? agree[j] / voted[j] : 1.0 / static_cast<double>(k);
    acc[j] = std::clamp(a, kMinAccuracy, kMaxAccuracy);
  }
  return acc;
}

// Uniform prior, so it cancels from the normalized posterior.
Posteriors expected_posteriors(const LabelMatrix& m, const std::vector<double>& acc) {
  const auto k = static_cast<std::size_t>(m.num_classes());
  std::vector<double> log_right(acc.size());
  std::vector<double> log_wrong(acc.size());
  for (std::size_t j = 0; j < acc.size(); ++j) {
    log_right[j] = std::log(acc[j]);
    log_wrong[j] = std::log((1.0 - acc[j]) / static_cast<double>(k - 1));
  }
  Posteriors q(m.num_samples() * k);
  std::vector<double> logp(k);
  for (std::size_t i = 0; i < m.num_samples(); ++i) {
    std::fill(logp.begin(), logp.end(), 0.0);
    const auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] == kAbstain) continue;
      for (std::size_t y = 0; y < k; ++y) {
        logp[y] += (static_cast<std::size_t>(r[j] - 1) == y) ? log_right[j] : log_wrong[j];
      }
    }
    const auto probs = softmax(logp);
    std::copy(probs.begin(), probs.end(), q.begin() + static_cast<std::ptrdiff_t>(i * k));
  }
  return q;
}

}  // namespace

std::string_view to_string(LabelerMethod method) {
  return method == LabelerMethod::majority_vote ? "majority_vote" : "generative";
}

WeightVector::WeightVector(int num_classes, std::size_t num_lfs, std::vector<double> weights,
                           LabelerMethod method)
    : num_classes_(num_classes), num_lfs_(num_lfs), weights_(std::move(weights)), method_(method) {
  if (num_classes_ < 2) throw DomainError("weight vector needs at least two classes");
  if (weights_.size() != static_cast<std::size_t>(num_classes_) * num_lfs_) {
    throw DomainError("weight table shape does not match (K x num_lfs)");
  }
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("weights must be finite and non-negative");
  }
}

double WeightVector::at(int label, std::size_t lf) const {
  if (label < 1 || label > num_classes_ || lf >= num_lfs_) throw DomainError("weight index out of range");
  return weights_[static_cast<std::size_t>(label - 1) * num_lfs_ + lf];
}

WeightVector WeightVector::scaled(double factor) const {
  std::vector<double> w = weights_;
  for (auto& x : w) x *= factor;
  return WeightVector(num_classes_, num_lfs_, std::move(w), method_);
}

WeightVector majority_weights(const LabelMatrix& m) {
  return WeightVector(m.num_classes(), m.num_lfs(),
                      std::vector<double>(static_cast<std::size_t>(m.num_classes()) * m.num_lfs(), 1.0),
                      LabelerMethod::majority_vote);
}

GenerativeFit fit_generative_model(const LabelMatrix& m, const GenerativeOptions& options) {
  if (options.max_iters < 1) throw DomainError("max_iters must be positive");
  if (!(options.tol > 0.0)) throw DomainError("tol must be positive");
  const auto& entries = m.entries();
  if (std::all_of(entries.begin(), entries.end(), [](int e) { return e == kAbstain; })) {
    throw FitError("cannot fit a label model: every labeling function abstains on every sample");
  }

  Posteriors q = vote_fraction_posteriors(m);
  std::vector<double> acc;
  int iterations = 0;
  bool converged = false;
  for (iterations = 1; iterations <= options.max_iters; ++iterations) {
    acc = estimate_accuracies(m, q);
    Posteriors next = expected_posteriors(m, acc);
    double change = 0.0;
    for (std::size_t t = 0; t < q.size(); ++t) change = std::max(change, std::fabs(next[t] - q[t]));
    q = std::move(next);
    if (change < options.tol) {
      converged = true;
      break;
    }
  }
  iterations = std::min(iterations, options.max_iters);
  acc = estimate_accuracies(m, q);

  const auto k = static_cast<std::size_t>(m.num_classes());
  std::vector<double> w(k * m.num_lfs());
  for (std::size_t j = 0; j < m.num_lfs(); ++j) {
    const double log_odds = std::log(acc[j] * static_cast<double>(k - 1) / (1.0 - acc[j]));
    for (std::size_t y = 0; y < k; ++y) w[y * m.num_lfs() + j] = std::max(0.0, log_odds);
  }
  return GenerativeFit{WeightVector(m.num_classes(), m.num_lfs(), std::move(w), LabelerMethod::generative),
                       std::move(acc), iterations, converged};
}

WeightVector fit_generative_weights(const LabelMatrix& m, int max_iters, double tol) {
  return fit_generative_model(m, GenerativeOptions{max_iters, tol}).weights;
}

std::vector<double> class_scores(const LabelMatrix& m, const WeightVector& w, std::size_t sample) {
  if (w.num_classes() != m.num_classes() || w.num_lfs() != m.num_lfs()) {
    throw DomainError("weight shape does not match the label matrix");
  }
  std::vector<double> scores(static_cast<std::size_t>(m.num_classes()), 0.0);
  const auto r = m.row(sample);
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (r[j] != kAbstain) scores[static_cast<std::size_t>(r[j] - 1)] += w.at(r[j], j);
  }
  return scores;
}

std::vector<double> softmax(std::span<const double> scores) {
  if (scores.empty()) return {};
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> out(scores.size());
  double total = 0.0;
  for (std::size_t y = 0; y < scores.size(); ++y) {
    out[y] = std::exp(scores[y] - top);
    total += out[y];
  }
  for (auto& p : out) p /= total;
  return out;
}

ProbabilisticLabel label_from_scores(std::span<const double> scores, int vote_count) {
  if (scores.size() < 2) throw DomainError("need scores for at least two classes");
  if (vote_count == 0) return {1, 1.0 / static_cast<double>(scores.size()), 0};
  std::size_t best = 0;
  for (std::size_t y = 1; y < scores.size(); ++y) {
    if (scores[y] > scores[best]) best = y;
  }
  const auto probs = softmax(scores);
  return {static_cast<int>(best) + 1, probs[best], vote_count};
}

ProbabilisticLabel combine(const LabelMatrix& m, const WeightVector& w, std::size_t sample) {
  const auto scores = class_scores(m, w, sample);
  const auto r = m.row(sample);
  const int n = static_cast<int>(std::count_if(r.begin(), r.end(), [](int v) { return v != kAbstain; }));
  return label_from_scores(scores, n);
}

std::vector<ProbabilisticLabel> combine_all(const LabelMatrix& m, const WeightVector& w) {
  std::vector<ProbabilisticLabel> out;
  out.reserve(m.num_samples());
  for (std::size_t i = 0; i < m.num_samples(); ++i) out.push_back(combine(m, w, i));
  return out;
}

}  // namespace advcurate
