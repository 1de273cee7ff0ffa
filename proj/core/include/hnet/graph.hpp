#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hnet/errors.hpp"

namespace hnet {

/// Finite weighted graph: symmetric, strictly positive edge weights, no
/// self-loops, at most one edge per unordered vertex pair. May carry a
/// bipartition labelling (class 0 / class 1) in which every edge joins
/// the two classes. Immutable after construction.
class WeightedGraph {
 public:
  struct Edge {
    int u = 0;
    int v = 0;
    double weight = 0.0;
  };

  /// Throws graph_error listing every violation found by check().
  WeightedGraph(int vertex_count, std::vector<Edge> edges,
                std::optional<std::vector<int>> partition = std::nullopt);

  /// Non-throwing validation: returns one message per invariant violation
  /// (empty means well-formed).
  static std::vector<std::string> check(
      int vertex_count, const std::vector<Edge>& edges,
      const std::optional<std::vector<int>>& partition = std::nullopt);

  int vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  /// (neighbor, weight) pairs of vertex i, in edge-list order.
  const std::vector<std::pair<int, double>>& neighbors(int i) const;
  int degree(int i) const;

  bool has_partition() const { return partition_.has_value(); }
  /// Class label of vertex i: 0 or 1.
  int partition_class(int i) const;
  const std::vector<int>& partition() const;

  /// Attempts a 2-coloring (component roots get class 0); nullopt when
  /// the graph contains an odd cycle.
  std::optional<std::vector<int>> two_coloring() const;

  bool structurally_equal(const WeightedGraph& other) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::optional<std::vector<int>> partition_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;
};

/// Subdivision bookkeeping: new vertex (parent_vertex_count + k)
/// subdivides parent edge parent_edge_of[k]. Old vertices keep their
/// indices, so the embedding of the parent vertex set is the identity.
struct RefinementRecord {
  int parent_vertex_count = 0;
  std::vector<std::pair<int, int>> parent_edge_of;
};

/// Subdivides every edge: each parent edge (i,j,w) becomes (i,e,sqrt2*w)
/// and (e,j,sqrt2*w) through its new vertex e. The result is bipartite
/// with old vertices in class 0 and new vertices in class 1.
std::pair<WeightedGraph, RefinementRecord> refine(const WeightedGraph& g);

struct BipartiteResult {
  WeightedGraph graph;
  /// Set when the graph had to be refined to become bipartite.
  std::optional<RefinementRecord> record;
};

/// Attaches a 2-coloring when one exists; otherwise refines (the
/// refinement is always bipartite) and labels the result.
BipartiteResult make_bipartite(const WeightedGraph& g);

/// Vertices 0..segments, edges (k, k+1) of the given weight.
WeightedGraph path_graph(int segments, double weight);

}  // namespace hnet
