#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hnet/graph.hpp"
#include "hnet/space.hpp"

namespace hnet {

/// Map from a weighted graph into a target space: one image point per
/// vertex, plus a pin set of vertices whose images relaxation holds
/// fixed. Immutable snapshot; operations return new maps.
class NetMap {
 public:
  NetMap(std::shared_ptr<const WeightedGraph> graph, Space space, std::vector<Point> images,
         std::vector<int> pins = {});

  const WeightedGraph& graph() const { return *graph_; }
  const std::shared_ptr<const WeightedGraph>& graph_ptr() const { return graph_; }
  const Space& space() const { return space_; }

  const Point& image(int i) const;
  const std::vector<Point>& images() const { return images_; }
  bool pinned(int i) const;
  /// Sorted pinned vertex indices.
  const std::vector<int>& pins() const { return pins_; }

  NetMap with_images(std::vector<Point> images) const;
  NetMap with_graph(std::shared_ptr<const WeightedGraph> graph) const;

 private:
  std::shared_ptr<const WeightedGraph> graph_;
  Space space_;
  std::vector<Point> images_;
  std::vector<int> pins_;
  std::vector<char> pinned_;
};

/// E_i(f) = sum_{j ~ i} w^2(i,j) d^2(f(i), f(j)).
double vertex_energy(const NetMap& f, int i);

/// E(f) = sum_i E_i(f); every edge contributes at both endpoints.
double energy(const NetMap& f);

/// Transfers a map across a graph refinement: old vertices keep their
/// images, each new vertex receives the midpoint of its parent edge's
/// images. Preserves total energy and halves every old vertex energy.
/// Pins carry over; new vertices are unpinned.
NetMap refine_map(const NetMap& f, std::shared_ptr<const WeightedGraph> refined,
                  const RefinementRecord& record);

struct RhoOptions {
  MeanOptions mean;
  /// Update the vertices of the half-sweep's class concurrently.
  bool parallel = false;
};

/// Half-sweep: replaces the image of every unpinned vertex of class
/// alpha (1 or 2) by the weighted center of gravity of its neighbors'
/// images. Requires a bipartition. Never increases energy.
NetMap rho(const NetMap& f, int alpha, const RhoOptions& options = {});

/// Max over unpinned vertices of the distance from f(i) to the center of
/// gravity of its neighbors' images; zero exactly at harmonic maps.
double harmonicity_residual(const NetMap& f, const MeanOptions& options = {});

enum class Termination { Converged, IterationCap, Ambiguity };

std::string to_string(Termination t);

struct RelaxationReport {
  /// E(f0), then one entry per half-sweep.
  std::vector<double> energy_trace;
  /// Max vertex displacement per half-sweep.
  std::vector<double> residual_trace;
  int sweeps = 0;
  Termination termination = Termination::Converged;
  /// Harmonicity residual of the final map (NaN if it was not evaluable).
  double final_residual = 0.0;
  NetMap final_map;
};

struct RelaxOptions {
  double tolerance = 1e-8;
  int max_sweeps = 100000;
  bool parallel = false;
};

/// Alternating relaxation: repeats rho_2 . rho_1 until the harmonicity
/// residual drops below tolerance or the sweep cap is reached. The
/// energy trace never increases. Ambiguity errors propagate annotated
/// with the sweep index; the iteration cap terminates with a report.
RelaxationReport relax(const NetMap& f, const RelaxOptions& options = {});

/// (E(f), E(rho_2 rho_1 f)): equal exactly when f is harmonic.
std::pair<double, double> fixed_point_energy_test(const NetMap& f);

/// True when d(f1(i), f2(i)) stays within twice the unique-midpoint
/// radius at every vertex (always true when r(N) is infinite).
bool geodesically_close(const NetMap& f1, const NetMap& f2);

/// Vertex-wise midpoint of two geodesically close maps on the same
/// graph; pin sets must agree and carry over.
NetMap midpoint_map(const NetMap& f1, const NetMap& f2);

struct GeodesicOptions {
  int segments = 8;
  int refinements = 0;
  double tolerance = 1e-8;
  int max_sweeps = 100000;
  bool parallel = false;
};

/// Traces the geodesic from a to b as a harmonic string of midpoints:
/// builds a path graph pinned at the endpoints, initializes the interior
/// along the connecting geodesic, relaxes, and applies the requested
/// refinement rounds (plus automatic ones whenever an edge image
/// distance approaches the convexity radius).
NetMap trace_geodesic(const Space& space, const Point& a, const Point& b,
                      const GeodesicOptions& options = {});

}  // namespace hnet
