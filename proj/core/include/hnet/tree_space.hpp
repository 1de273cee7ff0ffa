#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hnet/errors.hpp"
#include "hnet/point.hpp"

namespace hnet {

/// Finite metric tree: a connected acyclic graph whose edges carry
/// positive lengths. Points live on edges (TreePoint). All-pairs vertex
/// distances and next-hop routing are precomputed at construction, so
/// point-to-point queries are O(1) and path walks are O(path length).
class TreeStructure {
 public:
  struct Edge {
    int u = 0;
    int v = 0;
    double length = 0.0;
  };

  /// Validates connectivity, acyclicity and positive lengths; throws
  /// graph_error listing all violations otherwise.
  TreeStructure(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& incident_edges(int vertex) const;
  double vertex_distance(int a, int b) const;

  void validate_point(const TreePoint& p) const;

  /// Vertex id when the point sits exactly on a vertex (offset 0 or
  /// offset == length), nullopt for interior points.
  std::optional<int> vertex_at(const TreePoint& p) const;

  /// Representative used for equality and serialization: points on a
  /// shared vertex are rewritten onto the lowest incident edge id.
  TreePoint canonical(const TreePoint& p) const;
  bool equal(const TreePoint& p, const TreePoint& q) const;

  double distance(const TreePoint& p, const TreePoint& q) const;
  TreePoint interpolate(const TreePoint& p, const TreePoint& q, double t) const;

  /// Rays leaving p: two along its edge for interior points, one per
  /// incident edge at a vertex.
  std::vector<TreeDirection> directions_at(const TreePoint& p) const;

  /// First step of the geodesic p -> q; nullopt when the points coincide.
  std::optional<TreeDirection> direction_toward(const TreePoint& p, const TreePoint& q) const;

  /// Set when the tree was loaded from a file; lets a Space holding this
  /// tree round-trip its textual descriptor.
  std::optional<std::string> source_path;

 private:
  // Distance from p to an endpoint of its own edge (x must be one of them).
  double offset_to_endpoint(const TreePoint& p, int x) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<std::vector<double>> dist_;
  std::vector<std::vector<int>> next_;
};

}  // namespace hnet
