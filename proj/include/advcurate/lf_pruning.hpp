#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "advcurate/label_matrix.hpp"

namespace advcurate {

inline constexpr double kDefaultDelta = 0.5;

/// Symmetric matrix of pairwise Pearson correlations between LF columns.
/// Entries involving a constant column are undefined (std::nullopt).
class CorrelationMatrix {
 public:
  explicit CorrelationMatrix(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  std::optional<double> at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, std::optional<double> value);

 private:
  std::size_t size_;
  std::vector<std::optional<double>> values_;
};

CorrelationMatrix correlation_matrix(const LabelMatrix& m);

/// Undirected graph over LF indices; an edge marks a dependent pair.
class DependencyGraph {
 public:
  DependencyGraph(std::size_t node_count, double threshold);

  std::size_t node_count() const noexcept { return node_count_; }
  double threshold() const noexcept { return threshold_; }

  void add_edge(std::size_t i, std::size_t j);
  bool has_edge(std::size_t i, std::size_t j) const;
  const std::vector<std::size_t>& neighbors(std::size_t i) const;
  /// Edges as (i, j) with i < j, lexicographically sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  std::size_t node_count_;
  double threshold_;
  std::vector<std::vector<char>> adjacency_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

/// Edge (i, j) iff c_ij is defined and |c_ij| > delta.
DependencyGraph build_dependency_graph(const CorrelationMatrix& c, double delta);

/// Sorted node indices.
using Clique = std::vector<std::size_t>;

/// All maximal cliques (Bron-Kerbosch with Tomita pivoting). Isolated nodes
/// form singletons. The result is sorted lexicographically.
std::vector<Clique> maximal_cliques(const DependencyGraph& g);

struct LFRanking {
  std::vector<std::size_t> order;
  std::vector<std::size_t> clique_membership_counts;
  std::vector<double> coverages;
};

/// Orders LFs by clique membership count (desc), then coverage (desc), then
/// original index (asc).
LFRanking rank_lfs(const DependencyGraph& g, std::span<const Clique> cliques,
                   std::span<const double> coverages);

/// Walks `ranking.order`; each LF still selected removes every other member
/// of the cliques it belongs to. Returns the survivors in ascending order.
std::vector<std::size_t> select_independent(std::span<const Clique> cliques, const LFRanking& ranking);

struct PruneResult {
  std::vector<std::size_t> kept;  // ascending
  CorrelationMatrix correlations;
  DependencyGraph graph;
  std::vector<Clique> cliques;
  LFRanking ranking;
};

/// Independent LF selection with the full set of intermediate artifacts.
PruneResult prune_detailed(const LabelMatrix& m, double delta = kDefaultDelta);

/// Indices (ascending) of the LFs that survive dependency pruning.
std::vector<std::size_t> prune(const LabelMatrix& m, double delta = kDefaultDelta);

}  // namespace advcurate
