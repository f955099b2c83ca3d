#include "advcurate/curation.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "advcurate/errors.hpp"

namespace advcurate {

std::span<const std::size_t> CuratedSequence::dataset(std::size_t n) const {
  if (n < 1 || n > prefix_sizes.size()) throw DomainError("dataset number out of range");
  return std::span<const std::size_t>(ordering).first(prefix_sizes[n - 1]);
}

std::vector<std::size_t> order_samples(std::span<const double> keys) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
  return order;
}

std::vector<std::size_t> order_samples(std::span<const ConfidenceInterval> intervals) {
  std::vector<double> keys(intervals.size());
  std::transform(intervals.begin(), intervals.end(), keys.begin(),
                 [](const ConfidenceInterval& ci) { return ci.lower; });
  return order_samples(keys);
}

std::vector<std::size_t> prefix_sizes(std::size_t total, std::size_t num_datasets) {
  if (num_datasets == 0) throw DomainError("number of datasets must be at least 1");
  if (num_datasets > total) {
    throw DomainError("cannot curate " + std::to_string(num_datasets) + " datasets from " +
                      std::to_string(total) + " samples");
  }
  std::vector<std::size_t> sizes(num_datasets);
  for (std::size_t n = 1; n < num_datasets; ++n) sizes[n - 1] = n * total / num_datasets;
  sizes.back() = total;
  if (sizes.front() == 0) throw DomainError("first dataset would be empty");
  return sizes;
}

CuratedSequence curate(std::vector<std::size_t> ordering, std::size_t num_datasets,
                       std::vector<int> labels, std::vector<double> keys) {
  if (ordering.empty()) throw DomainError("cannot curate an empty ordering");
  if (labels.size() != ordering.size() || keys.size() != ordering.size()) {
    throw DomainError("labels and keys must have one entry per sample");
  }
  std::vector<char> seen(ordering.size(), 0);
  for (auto i : ordering) {
    if (i >= ordering.size() || seen[i]) throw DomainError("ordering is not a permutation");
    seen[i] = 1;
  }
  auto sizes = prefix_sizes(ordering.size(), num_datasets);
  return CuratedSequence{std::move(ordering), std::move(sizes), std::move(labels), std::move(keys)};
}

}  // namespace advcurate
