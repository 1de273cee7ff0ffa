#include "hnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <utility>

namespace hnet {

std::vector<std::string> WeightedGraph::check(int vertex_count, const std::vector<Edge>& edges,
                                              const std::optional<std::vector<int>>& partition) {
  std::vector<std::string> issues;
  if (vertex_count < 0) issues.push_back("vertex count is negative");
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    const std::string tag = "edge " + std::to_string(k) + " (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ")";
    if (e.u < 0 || e.u >= vertex_count || e.v < 0 || e.v >= vertex_count) {
      issues.push_back(tag + ": vertex index out of range");
      continue;
    }
    if (e.u == e.v) issues.push_back(tag + ": self-loop");
    if (!(e.weight > 0.0) || !std::isfinite(e.weight))
      issues.push_back(tag + ": weight must be strictly positive, got " +
                       std::to_string(e.weight));
    const auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) issues.push_back(tag + ": duplicate edge for this vertex pair");
  }
  if (partition) {
    if (static_cast<int>(partition->size()) != vertex_count) {
      issues.push_back("partition labels must cover every vertex");
    } else {
      for (int i = 0; i < vertex_count; ++i)
        if ((*partition)[i] != 0 && (*partition)[i] != 1) {
          issues.push_back("partition label of vertex " + std::to_string(i) + " is not 0/1");
          break;
        }
      for (const Edge& e : edges)
        if (e.u >= 0 && e.u < vertex_count && e.v >= 0 && e.v < vertex_count &&
            (*partition)[e.u] == (*partition)[e.v]) {
          issues.push_back("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                           ") does not cross the bipartition");
        }
    }
  }
  return issues;
}

WeightedGraph::WeightedGraph(int vertex_count, std::vector<Edge> edges,
                             std::optional<std::vector<int>> partition)
    : n_(vertex_count), edges_(std::move(edges)), partition_(std::move(partition)) {
  const auto issues = check(n_, edges_, partition_);
  if (!issues.empty()) {
    std::ostringstream msg;
    msg << "invalid graph:";
    for (const auto& s : issues) msg << "\n  - " << s;
    throw graph_error(msg.str());
  }
  adjacency_.assign(n_, {});
  for (const Edge& e : edges_) {
    adjacency_[e.u].emplace_back(e.v, e.weight);
    adjacency_[e.v].emplace_back(e.u, e.weight);
  }
}

const std::vector<std::pair<int, double>>& WeightedGraph::neighbors(int i) const {
  if (i < 0 || i >= n_) throw domain_error("vertex index " + std::to_string(i) + " out of range");
  return adjacency_[i];
}

int WeightedGraph::degree(int i) const { return static_cast<int>(neighbors(i).size()); }

int WeightedGraph::partition_class(int i) const {
  if (!partition_) throw domain_error("graph carries no bipartition");
  if (i < 0 || i >= n_) throw domain_error("vertex index " + std::to_string(i) + " out of range");
  return (*partition_)[i];
}

const std::vector<int>& WeightedGraph::partition() const {
  if (!partition_) throw domain_error("graph carries no bipartition");
  return *partition_;
}

std::optional<std::vector<int>> WeightedGraph::two_coloring() const {
  std::vector<int> color(n_, -1);
  for (int root = 0; root < n_; ++root) {
    if (color[root] != -1) continue;
    color[root] = 0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      for (const auto& [b, w] : adjacency_[a]) {
        if (color[b] == -1) {
          color[b] = 1 - color[a];
          queue.push_back(b);
        } else if (color[b] == color[a]) {
          return std::nullopt;
        }
      }
    }
  }
  return color;
}

bool WeightedGraph::structurally_equal(const WeightedGraph& other) const {
  if (n_ != other.n_ || edges_.size() != other.edges_.size()) return false;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& a = edges_[k];
    const Edge& b = other.edges_[k];
    if (a.u != b.u || a.v != b.v || a.weight != b.weight) return false;
  }
  return true;
}

std::pair<WeightedGraph, RefinementRecord> refine(const WeightedGraph& g) {
  const double sqrt2 = std::sqrt(2.0);
  const int n = g.vertex_count();
  std::vector<WeightedGraph::Edge> edges;
  edges.reserve(2 * g.edge_count());
  RefinementRecord record;
  record.parent_vertex_count = n;
  record.parent_edge_of.reserve(g.edge_count());
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const auto& e = g.edges()[k];
    const int mid = n + static_cast<int>(k);
    edges.push_back({e.u, mid, sqrt2 * e.weight});
    edges.push_back({mid, e.v, sqrt2 * e.weight});
    record.parent_edge_of.emplace_back(e.u, e.v);
  }
  std::vector<int> labels(n + g.edge_count(), 1);
  std::fill(labels.begin(), labels.begin() + n, 0);
  WeightedGraph refined(n + static_cast<int>(g.edge_count()), std::move(edges),
                        std::move(labels));
  return {std::move(refined), std::move(record)};
}

BipartiteResult make_bipartite(const WeightedGraph& g) {
  if (auto coloring = g.two_coloring()) {
    WeightedGraph labeled(g.vertex_count(), g.edges(), std::move(*coloring));
    return BipartiteResult{std::move(labeled), std::nullopt};
  }
  auto [refined, record] = refine(g);
  return BipartiteResult{std::move(refined), std::move(record)};
}

WeightedGraph path_graph(int segments, double weight) {
  if (segments < 1) throw domain_error("path graph needs at least one segment");
  std::vector<WeightedGraph::Edge> edges;
  edges.reserve(segments);
  for (int k = 0; k < segments; ++k) edges.push_back({k, k + 1, weight});
  return WeightedGraph(segments + 1, std::move(edges));
}

}  // namespace hnet
