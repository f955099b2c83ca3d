#include "advcurate/lf_pruning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "advcurate/errors.hpp"
#include "advcurate/stat_kernels.hpp"

namespace advcurate {

CorrelationMatrix::CorrelationMatrix(std::size_t size) : size_(size), values_(size * size) {
  for (std::size_t i = 0; i < size_; ++i) values_[i * size_ + i] = 1.0;
}

std::optional<double> CorrelationMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= size_ || j >= size_) throw DomainError("correlation index out of range");
  return values_[i * size_ + j];
}

void CorrelationMatrix::set(std::size_t i, std::size_t j, std::optional<double> value) {
  if (i >= size_ || j >= size_) throw DomainError("correlation index out of range");
  values_[i * size_ + j] = value;
  values_[j * size_ + i] = value;
}

CorrelationMatrix correlation_matrix(const LabelMatrix& m) {
  const std::size_t p = m.num_lfs();
  std::vector<std::vector<double>> columns;
  columns.reserve(p);
  for (std::size_t j = 0; j < p; ++j) columns.push_back(m.column(j));

  CorrelationMatrix c(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      c.set(i, j, m.num_samples() < 2 ? std::nullopt : stats::pearson(columns[i], columns[j]));
    }
  }
  return c;
}

DependencyGraph::DependencyGraph(std::size_t node_count, double threshold)
    : node_count_(node_count),
      threshold_(threshold),
      adjacency_(node_count, std::vector<char>(node_count, 0)),
      neighbors_(node_count) {}

void DependencyGraph::add_edge(std::size_t i, std::size_t j) {
  if (i >= node_count_ || j >= node_count_) throw DomainError("edge references an invalid node");
  if (i == j) throw DomainError("dependency graph has no self-loops");
  if (adjacency_[i][j]) return;
  adjacency_[i][j] = adjacency_[j][i] = 1;
  neighbors_[i].insert(std::lower_bound(neighbors_[i].begin(), neighbors_[i].end(), j), j);
  neighbors_[j].insert(std::lower_bound(neighbors_[j].begin(), neighbors_[j].end(), i), i);
}

bool DependencyGraph::has_edge(std::size_t i, std::size_t j) const {
  if (i >= node_count_ || j >= node_count_) throw DomainError("node index out of range");
  return adjacency_[i][j] != 0;
}

const std::vector<std::size_t>& DependencyGraph::neighbors(std::size_t i) const {
  if (i >= node_count_) throw DomainError("node index out of range");
  return neighbors_[i];
}

std::vector<std::pair<std::size_t, std::size_t>> DependencyGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < node_count_; ++i) {
    for (auto j : neighbors_[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

DependencyGraph build_dependency_graph(const CorrelationMatrix& c, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("delta must lie in [0, 1]");
  DependencyGraph g(c.size(), delta);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      const auto cij = c.at(i, j);
      if (cij && std::fabs(*cij) > delta) g.add_edge(i, j);
    }
  }
  return g;
}

namespace {

using NodeSet = std::vector<std::size_t>;  // sorted

NodeSet intersect(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class BronKerbosch {
 public:
  explicit BronKerbosch(const DependencyGraph& g) : g_(g) {}

  std::vector<Clique> run() {
    NodeSet all(g_.node_count());
    std::iota(all.begin(), all.end(), std::size_t{0});
    NodeSet r;
    expand(r, all, {});
    std::sort(cliques_.begin(), cliques_.end());
    return std::move(cliques_);
  }

 private:
  void expand(NodeSet& r, NodeSet p, NodeSet x) {
    if (p.empty()) {
      if (x.empty()) {
        Clique c = r;
        std::sort(c.begin(), c.end());
        cliques_.push_back(std::move(c));
      }
      return;
    }
    // Tomita pivot: the vertex of P ∪ X with the most neighbours in P.
    std::size_t pivot = p.front();
    std::size_t best = intersect(p, g_.neighbors(pivot)).size();
    for (const NodeSet* s : {&p, &x}) {
      for (auto u : *s) {
        const auto k = intersect(p, g_.neighbors(u)).size();
        if (k > best) {
          best = k;
          pivot = u;
        }
      }
    }
    NodeSet candidates;
    const auto& pivot_nbrs = g_.neighbors(pivot);
    std::set_difference(p.begin(), p.end(), pivot_nbrs.begin(), pivot_nbrs.end(),
                        std::back_inserter(candidates));
    for (auto v : candidates) {
      const auto& nv = g_.neighbors(v);
      r.push_back(v);
      expand(r, intersect(p, nv), intersect(x, nv));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  const DependencyGraph& g_;
  std::vector<Clique> cliques_;
};

}  // namespace

std::vector<Clique> maximal_cliques(const DependencyGraph& g) {
  if (g.node_count() == 0) return {};
  return BronKerbosch(g).run();
}

LFRanking rank_lfs(const DependencyGraph& g, std::span<const Clique> cliques,
                   std::span<const double> coverages) {
  const std::size_t n = g.node_count();
  if (coverages.size() != n) throw DomainError("one coverage value per LF is required");
  LFRanking ranking;
  ranking.clique_membership_counts.assign(n, 0);
  ranking.coverages.assign(coverages.begin(), coverages.end());
  for (const auto& c : cliques) {
    for (auto v : c) {
      if (v >= n) throw DomainError("clique references an invalid node");
      ++ranking.clique_membership_counts[v];
    }
  }
  ranking.order.resize(n);
  std::iota(ranking.order.begin(), ranking.order.end(), std::size_t{0});
  const auto& counts = ranking.clique_membership_counts;
  std::sort(ranking.order.begin(), ranking.order.end(), [&](std::size_t a, std::size_t b) {
    if (counts[a] != counts[b]) return counts[a] > counts[b];
    if (coverages[a] != coverages[b]) return coverages[a] > coverages[b];
    return a < b;
  });
  return ranking;
}

std::vector<std::size_t> select_independent(std::span<const Clique> cliques, const LFRanking& ranking) {
  const std::size_t n = ranking.order.size();
  std::vector<std::vector<std::size_t>> cliques_of(n);
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    for (auto v : cliques[c]) {
      if (v >= n) throw DomainError("clique references an invalid node");
      cliques_of[v].push_back(c);
    }
  }
  std::vector<char> kept(n, 1);
  for (auto lf : ranking.order) {
    if (!kept[lf]) continue;
    for (auto c : cliques_of[lf]) {
      for (auto other : cliques[c]) {
        if (other != lf) kept[other] = 0;
      }
    }
  }
  std::vector<std::size_t> survivors;
  for (std::size_t j = 0; j < n; ++j) {
    if (kept[j]) survivors.push_back(j);
  }
  return survivors;
}

PruneResult prune_detailed(const LabelMatrix& m, double delta) {
  auto corr = correlation_matrix(m);
  auto graph = build_dependency_graph(corr, delta);
  auto cliques = maximal_cliques(graph);
  std::vector<double> cov(m.num_lfs());
  for (std::size_t j = 0; j < m.num_lfs(); ++j) cov[j] = coverage(m, j);
  auto ranking = rank_lfs(graph, cliques, cov);

  auto survivors = select_independent(cliques, ranking);
  return PruneResult{std::move(survivors), std::move(corr), std::move(graph), std::move(cliques),
                     std::move(ranking)};
}

std::vector<std::size_t> prune(const LabelMatrix& m, double delta) {
  return prune_detailed(m, delta).kept;
}

}  // namespace advcurate
