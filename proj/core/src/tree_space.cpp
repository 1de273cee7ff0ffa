#include "hnet/tree_space.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>
#include <utility>

namespace hnet {

TreeStructure::TreeStructure(int vertex_count, std::vector<Edge> edges)
    : n_(vertex_count), edges_(std::move(edges)) {
  std::vector<std::string> issues;
  if (n_ <= 0) issues.push_back("tree needs at least one vertex");
  if (n_ > 0 && edges_.size() != static_cast<std::size_t>(n_) - 1)
    issues.push_back("tree with " + std::to_string(n_) + " vertices needs exactly " +
                     std::to_string(n_ - 1) + " edges, got " + std::to_string(edges_.size()));
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      issues.push_back("edge " + std::to_string(k) + " references a vertex out of range");
    else if (e.u == e.v)
      issues.push_back("edge " + std::to_string(k) + " is a self-loop");
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      issues.push_back("edge " + std::to_string(k) + " has nonpositive length");
  }
  if (!issues.empty()) {
    std::ostringstream msg;
    msg << "invalid tree:";
    for (const auto& s : issues) msg << "\n  - " << s;
    throw graph_error(msg.str());
  }

  incident_.assign(n_, {});
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    incident_[edges_[k].u].push_back(static_cast<int>(k));
    incident_[edges_[k].v].push_back(static_cast<int>(k));
  }

  // BFS from every vertex fills distances and first-hop edges; a visited
  // collision would mean a cycle, an unreached vertex a disconnection.
  dist_.assign(n_, std::vector<double>(n_, std::numeric_limits<double>::quiet_NaN()));
  next_.assign(n_, std::vector<int>(n_, -1));
  for (int root = 0; root < n_; ++root) {
    dist_[root][root] = 0.0;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      for (int k : incident_[a]) {
        const Edge& e = edges_[k];
        int b = e.u == a ? e.v : e.u;
        if (!std::isnan(dist_[root][b])) continue;
        dist_[root][b] = dist_[root][a] + e.length;
        next_[root][b] = a == root ? k : next_[root][a];
        queue.push_back(b);
      }
    }
  }
  for (int v = 0; v < n_; ++v)
    if (std::isnan(dist_[0][v])) throw graph_error("invalid tree:\n  - vertex set is not connected");
  // n-1 edges + connected implies acyclic.
}

const std::vector<int>& TreeStructure::incident_edges(int vertex) const {
  if (vertex < 0 || vertex >= n_) throw domain_error("tree vertex index out of range");
  return incident_[vertex];
}

double TreeStructure::vertex_distance(int a, int b) const {
  if (a < 0 || a >= n_ || b < 0 || b >= n_) throw domain_error("tree vertex index out of range");
  return dist_[a][b];
}

void TreeStructure::validate_point(const TreePoint& p) const {
  if (p.edge < 0 || p.edge >= static_cast<int>(edges_.size()))
    throw invalid_point_error("tree point edge index " + std::to_string(p.edge) + " out of range");
  const double len = edges_[p.edge].length;
  if (!(p.offset >= 0.0) || !(p.offset <= len) || !std::isfinite(p.offset))
    throw invalid_point_error("tree point offset " + std::to_string(p.offset) +
                              " outside [0, " + std::to_string(len) + "]");
}

std::optional<int> TreeStructure::vertex_at(const TreePoint& p) const {
  validate_point(p);
  const Edge& e = edges_[p.edge];
  if (p.offset == 0.0) return e.u;
  if (p.offset == e.length) return e.v;
  return std::nullopt;
}

TreePoint TreeStructure::canonical(const TreePoint& p) const {
  auto vertex = vertex_at(p);
  if (!vertex) return p;
  const int k = incident_[*vertex].front();  // incident lists are ascending by construction
  return edges_[k].u == *vertex ? TreePoint{k, 0.0} : TreePoint{k, edges_[k].length};
}

bool TreeStructure::equal(const TreePoint& p, const TreePoint& q) const {
  const TreePoint cp = canonical(p);
  const TreePoint cq = canonical(q);
  return cp.edge == cq.edge && cp.offset == cq.offset;
}

double TreeStructure::offset_to_endpoint(const TreePoint& p, int x) const {
  const Edge& e = edges_[p.edge];
  return x == e.u ? p.offset : e.length - p.offset;
}

double TreeStructure::distance(const TreePoint& p, const TreePoint& q) const {
  validate_point(p);
  validate_point(q);
  if (p.edge == q.edge) return std::abs(p.offset - q.offset);
  // The geodesic leaves p's edge through one endpoint and enters q's
  // through one; the minimum over the four exits is exact on a tree.
  const Edge& ep = edges_[p.edge];
  const Edge& eq = edges_[q.edge];
  double best = std::numeric_limits<double>::infinity();
  for (int x : {ep.u, ep.v})
    for (int y : {eq.u, eq.v})
      best = std::min(best, offset_to_endpoint(p, x) + dist_[x][y] + offset_to_endpoint(q, y));
  return best;
}

std::optional<TreeDirection> TreeStructure::direction_toward(const TreePoint& p,
                                                             const TreePoint& q) const {
  if (equal(p, q)) return std::nullopt;
  const auto pv = vertex_at(p);
  if (!pv) {
    // Interior point: only two ways out.
    if (p.edge == q.edge) return TreeDirection{p.edge, q.offset > p.offset};
    const Edge& e = edges_[p.edge];
    const double via_u = p.offset + distance(TreePoint{p.edge, 0.0}, q);
    const double via_v = (e.length - p.offset) + distance(TreePoint{p.edge, e.length}, q);
    return TreeDirection{p.edge, via_v <= via_u};
  }
  // At a vertex: pick the incident edge whose far side leads to q.
  const auto qv = vertex_at(q);
  int first_edge;
  if (qv) {
    first_edge = next_[*pv][*qv];
  } else if (edges_[q.edge].u == *pv || edges_[q.edge].v == *pv) {
    first_edge = q.edge;
  } else {
    const Edge& eq = edges_[q.edge];
    const double via_u = dist_[*pv][eq.u] + q.offset;
    const double via_v = dist_[*pv][eq.v] + (eq.length - q.offset);
    first_edge = via_u <= via_v ? next_[*pv][eq.u] : next_[*pv][eq.v];
    if (first_edge < 0) first_edge = q.edge;  // q's edge hangs directly off *pv
  }
  return TreeDirection{first_edge, edges_[first_edge].u == *pv};
}

TreePoint TreeStructure::interpolate(const TreePoint& p, const TreePoint& q, double t) const {
  if (!(t >= 0.0) || !(t <= 1.0))
    throw domain_error("interpolation parameter " + std::to_string(t) + " outside [0,1]");
  validate_point(p);
  validate_point(q);
  const double total = distance(p, q);
  double remaining = t * total;
  if (total == 0.0 || remaining == 0.0) return p;
  if (t == 1.0) return q;

  TreePoint cur = p;
  while (true) {
    const auto dir = direction_toward(cur, q);
    if (!dir) return cur;  // arithmetic exhausted the path
    const Edge& e = edges_[dir->edge];
    // Rebase cur onto the edge we are about to walk.
    double off;
    if (cur.edge == dir->edge) {
      off = cur.offset;
    } else {
      const auto cv = vertex_at(cur);
      off = (e.u == *cv) ? 0.0 : e.length;
    }
    const double room = dir->toward_v ? e.length - off : off;
    const double qoff = (q.edge == dir->edge)
                            ? std::abs(q.offset - off)
                            : std::numeric_limits<double>::infinity();
    const double step = std::min({remaining, room, qoff});
    const double landed = dir->toward_v ? off + step : off - step;
    cur = TreePoint{dir->edge, std::clamp(landed, 0.0, e.length)};
    remaining -= step;
    if (remaining <= 1e-15 * std::max(1.0, total)) return cur;
  }
}

std::vector<TreeDirection> TreeStructure::directions_at(const TreePoint& p) const {
  const auto v = vertex_at(p);
  if (!v) return {TreeDirection{p.edge, false}, TreeDirection{p.edge, true}};
  std::vector<TreeDirection> dirs;
  dirs.reserve(incident_[*v].size());
  for (int k : incident_[*v]) dirs.push_back(TreeDirection{k, edges_[k].u == *v});
  return dirs;
}

}  // namespace hnet
