#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "advcurate/label_matrix.hpp"

namespace advcurate {

enum class LabelerMethod { majority_vote, generative };

std::string_view to_string(LabelerMethod method);

/// Non-negative weight per (class, LF). Classes are addressed 1..K.
class WeightVector {
 public:
  WeightVector(int num_classes, std::size_t num_lfs, std::vector<double> weights,
               LabelerMethod method);

  int num_classes() const noexcept { return num_classes_; }
  std::size_t num_lfs() const noexcept { return num_lfs_; }
  LabelerMethod method() const noexcept { return method_; }
  double at(int label, std::size_t lf) const;
  const std::vector<double>& values() const noexcept { return weights_; }

  WeightVector scaled(double factor) const;

 private:
  int num_classes_;
  std::size_t num_lfs_;
  std::vector<double> weights_;  // row-major (K x num_lfs)
  LabelerMethod method_;
};

struct ProbabilisticLabel {
  int label = 1;
  double confidence = 0.0;
  int vote_count = 0;
};

/// All-ones weights.
WeightVector majority_weights(const LabelMatrix& m);

struct GenerativeOptions {
  int max_iters = 100;
  double tol = 1e-6;
};

struct GenerativeFit {
  WeightVector weights;
  std::vector<double> accuracies;  // clamped to [0.01, 0.99]
  int iterations = 0;
  bool converged = false;
};

/// One-coin conditionally independent label model fit by EM under a uniform
/// class prior. Deterministic: posteriors start from the vote fractions.
/// Throws FitError when every entry abstains.
GenerativeFit fit_generative_model(const LabelMatrix& m, const GenerativeOptions& options = {});

WeightVector fit_generative_weights(const LabelMatrix& m, int max_iters = 100, double tol = 1e-6);

/// score(y) = sum_i w_i^(y) * 1(lambda_i(x) = y), for y = 1..K.
std::vector<double> class_scores(const LabelMatrix& m, const WeightVector& w, std::size_t sample);

std::vector<double> softmax(std::span<const double> scores);

/// Label and confidence from class scores; ties go to the smallest class.
/// With vote_count == 0 the result is label 1 at confidence 1/K.
ProbabilisticLabel label_from_scores(std::span<const double> scores, int vote_count);

ProbabilisticLabel combine(const LabelMatrix& m, const WeightVector& w, std::size_t sample);

std::vector<ProbabilisticLabel> combine_all(const LabelMatrix& m, const WeightVector& w);

}  // namespace advcurate
