#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "advcurate/conf_intervals.hpp"

namespace advcurate {

inline constexpr std::size_t kDefaultNumDatasets = 10;

/// Nested datasets D_1 ⊆ ... ⊆ D_N, each a prefix of `ordering`.
struct CuratedSequence {
  std::vector<std::size_t> ordering;
  std::vector<std::size_t> prefix_sizes;
  /// Per-sample estimated label and ordering key, indexed by sample.
  std::vector<int> labels;
  std::vector<double> keys;

  std::size_t num_datasets() const noexcept { return prefix_sizes.size(); }
  std::span<const std::size_t> dataset(std::size_t n) const;  // n in 1..N
};

/// Sample indices sorted by key descending, ties by index ascending.
std::vector<std::size_t> order_samples(std::span<const double> keys);
std::vector<std::size_t> order_samples(std::span<const ConfidenceInterval> intervals);

/// floor(n * total / N) for n < N, and total for n = N.
/// Throws DomainError when N is 0, exceeds total, or yields an empty prefix.
std::vector<std::size_t> prefix_sizes(std::size_t total, std::size_t num_datasets);

CuratedSequence curate(std::vector<std::size_t> ordering, std::size_t num_datasets,
                       std::vector<int> labels, std::vector<double> keys);

}  // namespace advcurate
