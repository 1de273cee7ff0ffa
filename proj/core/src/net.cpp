#include "hnet/net.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <utility>

namespace hnet {

NetMap::NetMap(std::shared_ptr<const WeightedGraph> graph, Space space, std::vector<Point> images,
               std::vector<int> pins)
    : graph_(std::move(graph)), space_(std::move(space)), images_(std::move(images)),
      pins_(std::move(pins)) {
  if (!graph_) throw domain_error("net map needs a graph");
  if (static_cast<int>(images_.size()) != graph_->vertex_count())
    throw domain_error("net map needs one image per vertex (" +
                       std::to_string(graph_->vertex_count()) + " vertices, " +
                       std::to_string(images_.size()) + " images)");
  for (const Point& p : images_) space_.validate_point(p);
  std::sort(pins_.begin(), pins_.end());
  pins_.erase(std::unique(pins_.begin(), pins_.end()), pins_.end());
  pinned_.assign(images_.size(), 0);
  for (int i : pins_) {
    if (i < 0 || i >= graph_->vertex_count())
      throw domain_error("pinned vertex " + std::to_string(i) + " out of range");
    pinned_[i] = 1;
  }
}

const Point& NetMap::image(int i) const {
  if (i < 0 || i >= static_cast<int>(images_.size()))
    throw domain_error("vertex index " + std::to_string(i) + " out of range");
  return images_[i];
}

bool NetMap::pinned(int i) const {
  if (i < 0 || i >= static_cast<int>(pinned_.size()))
    throw domain_error("vertex index " + std::to_string(i) + " out of range");
  return pinned_[i] != 0;
}

NetMap NetMap::with_images(std::vector<Point> images) const {
  return NetMap(graph_, space_, std::move(images), pins_);
}

NetMap NetMap::with_graph(std::shared_ptr<const WeightedGraph> graph) const {
  return NetMap(std::move(graph), space_, images_, pins_);
}

double vertex_energy(const NetMap& f, int i) {
  double e = 0.0;
  for (const auto& [j, w] : f.graph().neighbors(i)) {
    const double d = f.space().distance(f.image(i), f.image(j));
    e += w * w * d * d;
  }
  return e;
}

double energy(const NetMap& f) {
  // Each edge contributes at both endpoints.
  double e = 0.0;
  for (const auto& edge : f.graph().edges()) {
    const double d = f.space().distance(f.image(edge.u), f.image(edge.v));
    e += 2.0 * edge.weight * edge.weight * d * d;
  }
  return e;
}

NetMap refine_map(const NetMap& f, std::shared_ptr<const WeightedGraph> refined,
                  const RefinementRecord& record) {
  const WeightedGraph& parent = f.graph();
  if (record.parent_vertex_count != parent.vertex_count() ||
      record.parent_edge_of.size() != parent.edge_count())
    throw domain_error("refinement record does not match the map's graph");
  if (!refined || refined->vertex_count() != parent.vertex_count() +
                                                 static_cast<int>(parent.edge_count()))
    throw domain_error("refined graph does not match the refinement record");
  for (std::size_t k = 0; k < parent.edge_count(); ++k) {
    const auto& e = parent.edges()[k];
    if (record.parent_edge_of[k] != std::make_pair(e.u, e.v))
      throw domain_error("refinement record edge " + std::to_string(k) +
                         " does not match the parent graph");
  }

  std::vector<Point> images = f.images();
  images.reserve(refined->vertex_count());
  for (std::size_t k = 0; k < parent.edge_count(); ++k) {
    const auto& [u, v] = record.parent_edge_of[k];
    try {
      images.push_back(f.space().midpoint(f.image(u), f.image(v)));
    } catch (const ambiguity_error& e) {
      throw ambiguity_error("refining edge (" + std::to_string(u) + "," + std::to_string(v) +
                            "): " + e.what());
    }
  }
  return NetMap(std::move(refined), f.space(), std::move(images), f.pins());
}

namespace {

// Mean solver tolerance used inside sweeps: well below the outer
// residual target so displacement measurements are trustworthy.
MeanOptions inner_mean_options(double outer_tolerance) {
  MeanOptions opt;
  opt.tolerance = std::clamp(0.01 * outer_tolerance, 1e-14, 1e-10);
  return opt;
}

Point local_center(const NetMap& f, int i, MeanOptions opt) {
  const auto& nbrs = f.graph().neighbors(i);
  std::vector<Point> pts;
  std::vector<double> ws;
  pts.reserve(nbrs.size());
  ws.reserve(nbrs.size());
  for (const auto& [j, w] : nbrs) {
    pts.push_back(f.image(j));
    ws.push_back(w);
  }
  opt.hint = f.image(i);
  return f.space().weighted_center_of_gravity(pts, ws, opt);
}

// One half-sweep over the given class; returns the updated images and
// the largest displacement.
double half_sweep(const NetMap& f, int cls, const MeanOptions& mean_opt, bool parallel,
                  std::vector<Point>& images) {
  const WeightedGraph& g = f.graph();
  std::vector<int> todo;
  for (int i = 0; i < g.vertex_count(); ++i)
    if (g.partition_class(i) == cls && !f.pinned(i) && g.degree(i) > 0) todo.push_back(i);

  std::vector<double> moved(todo.size(), 0.0);
  auto update = [&](std::size_t a, std::size_t b) {
    for (std::size_t t = a; t < b; ++t) {
      const int i = todo[t];
      try {
        Point c = local_center(f, i, mean_opt);
        moved[t] = f.space().distance(f.image(i), c);
        images[i] = std::move(c);
      } catch (const ambiguity_error& e) {
        throw ambiguity_error("vertex " + std::to_string(i) + ": " + e.what());
      } catch (const convergence_error& e) {
        throw convergence_error("vertex " + std::to_string(i) + ": " + e.what(),
                                e.best_iterate(), e.residual());
      }
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  if (!parallel || todo.size() < 128 || hw < 2) {
    update(0, todo.size());
  } else {
    // Bipartiteness makes the updates of one class independent, so they
    // may run concurrently; each thread writes disjoint image slots.
    const std::size_t workers = std::min<std::size_t>(hw, 8);
    const std::size_t chunk = (todo.size() + workers - 1) / workers;
    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::atomic_flag failure_claimed = ATOMIC_FLAG_INIT;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t a = std::min(w * chunk, todo.size());
      const std::size_t b = std::min(a + chunk, todo.size());
      if (a == b) break;
      threads.emplace_back([&, a, b] {
        try {
          update(a, b);
        } catch (...) {
          if (!failure_claimed.test_and_set()) failure = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
  }

  double max_moved = 0.0;
  for (double d : moved) max_moved = std::max(max_moved, d);
  return max_moved;
}

}  // namespace

NetMap rho(const NetMap& f, int alpha, const RhoOptions& options) {
  if (alpha != 1 && alpha != 2) throw domain_error("rho class must be 1 or 2");
  if (!f.graph().has_partition())
    throw domain_error("rho needs a bipartition; call make_bipartite first");
  std::vector<Point> images = f.images();
  half_sweep(f, alpha - 1, options.mean, options.parallel, images);
  return f.with_images(std::move(images));
}

double harmonicity_residual(const NetMap& f, const MeanOptions& options) {
  double worst = 0.0;
  for (int i = 0; i < f.graph().vertex_count(); ++i) {
    if (f.pinned(i) || f.graph().degree(i) == 0) continue;
    try {
      const Point c = local_center(f, i, options);
      worst = std::max(worst, f.space().distance(f.image(i), c));
    } catch (const ambiguity_error& e) {
      throw ambiguity_error("vertex " + std::to_string(i) + ": " + e.what());
    }
  }
  return worst;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::IterationCap: return "iteration-cap";
    case Termination::Ambiguity: return "ambiguity";
  }
  return "?";
}

RelaxationReport relax(const NetMap& f0, const RelaxOptions& options) {
  if (!(options.tolerance > 0.0)) throw domain_error("relaxation tolerance must be positive");
  if (options.max_sweeps < 1) throw domain_error("relaxation needs at least one sweep");
  if (!f0.graph().has_partition())
    throw domain_error("relaxation needs a bipartition; call make_bipartite first");

  const MeanOptions mean_opt = inner_mean_options(options.tolerance);
  RelaxationReport report{.energy_trace = {energy(f0)},
                          .residual_trace = {},
                          .sweeps = 0,
                          .termination = Termination::IterationCap,
                          .final_residual = std::numeric_limits<double>::quiet_NaN(),
                          .final_map = f0};
  NetMap f = f0;
  for (int sweep = 0; sweep < options.max_sweeps; ++sweep) {
    double sweep_max = 0.0;
    for (int cls = 0; cls < 2; ++cls) {
      std::vector<Point> images = f.images();
      double moved;
      try {
        moved = half_sweep(f, cls, mean_opt, options.parallel, images);
      } catch (const ambiguity_error& e) {
        throw ambiguity_error("sweep " + std::to_string(sweep + 1) + ", " + e.what());
      }
      f = f.with_images(std::move(images));
      report.energy_trace.push_back(energy(f));
      report.residual_trace.push_back(moved);
      sweep_max = std::max(sweep_max, moved);
    }
    report.sweeps = sweep + 1;
    if (sweep_max < options.tolerance) {
      const double residual = harmonicity_residual(f, mean_opt);
      if (residual < options.tolerance) {
        report.termination = Termination::Converged;
        report.final_residual = residual;
        report.final_map = std::move(f);
        return report;
      }
    }
  }
  try {
    report.final_residual = harmonicity_residual(f, mean_opt);
  } catch (const error&) {
    // leave NaN: the residual was not evaluable at the cap
  }
  report.final_map = std::move(f);
  return report;
}

std::pair<double, double> fixed_point_energy_test(const NetMap& f) {
  const double before = energy(f);
  const NetMap swept = rho(rho(f, 1), 2);
  return {before, energy(swept)};
}

bool geodesically_close(const NetMap& f1, const NetMap& f2) {
  if (!f1.graph().structurally_equal(f2.graph()))
    throw domain_error("maps live on different graphs");
  if (!f1.space().same_space(f2.space())) throw domain_error("maps target different spaces");
  const double r = f1.space().unique_midpoint_radius();
  if (!std::isfinite(r)) return true;
  for (int i = 0; i < f1.graph().vertex_count(); ++i)
    if (f1.space().distance(f1.image(i), f2.image(i)) >= 2.0 * r - 1e-12) return false;
  return true;
}

NetMap midpoint_map(const NetMap& f1, const NetMap& f2) {
  if (!f1.graph().structurally_equal(f2.graph()))
    throw domain_error("maps live on different graphs");
  if (!f1.space().same_space(f2.space())) throw domain_error("maps target different spaces");
  if (f1.pins() != f2.pins()) throw domain_error("midpoint map requires agreeing pin sets");
  std::vector<Point> images;
  images.reserve(f1.graph().vertex_count());
  for (int i = 0; i < f1.graph().vertex_count(); ++i) {
    try {
      images.push_back(f1.space().midpoint(f1.image(i), f2.image(i)));
    } catch (const ambiguity_error& e) {
      throw ambiguity_error("vertex " + std::to_string(i) + ": " + e.what());
    }
  }
  return NetMap(f1.graph_ptr(), f1.space(), std::move(images), f1.pins());
}

NetMap trace_geodesic(const Space& space, const Point& a, const Point& b,
                      const GeodesicOptions& options) {
  if (options.segments < 1) throw domain_error("geodesic tracing needs at least one segment");
  space.validate_point(a);
  space.validate_point(b);

  auto bp = make_bipartite(path_graph(options.segments, 1.0));
  auto graph = std::make_shared<const WeightedGraph>(std::move(bp.graph));
  std::vector<Point> images;
  images.reserve(options.segments + 1);
  for (int k = 0; k <= options.segments; ++k) {
    try {
      images.push_back(space.interpolate(a, b, static_cast<double>(k) / options.segments));
    } catch (const ambiguity_error& e) {
      throw ambiguity_error(std::string("initializing geodesic string: ") + e.what());
    }
  }
  NetMap f(graph, space, std::move(images), {0, options.segments});

  const RelaxOptions relax_opt{.tolerance = options.tolerance,
                               .max_sweeps = options.max_sweeps,
                               .parallel = options.parallel};

  auto refine_once = [&](NetMap& map, const std::string& stage) {
    auto [rg, record] = refine(map.graph());
    try {
      map = refine_map(map, std::make_shared<const WeightedGraph>(std::move(rg)), record);
    } catch (const ambiguity_error& e) {
      throw ambiguity_error(stage + ": " + e.what());
    }
  };

  // Keep every edge image distance comfortably inside the convexity
  // radius before relaxing.
  auto auto_refine = [&](NetMap& map, const std::string& stage) {
    const double c = map.space().convexity_radius();
    if (!std::isfinite(c)) return;
    for (int guard = 0; guard < 48; ++guard) {
      double longest = 0.0;
      for (const auto& e : map.graph().edges())
        longest = std::max(longest, map.space().distance(map.image(e.u), map.image(e.v)));
      if (longest <= 0.9 * c) return;
      refine_once(map, stage + " (adaptive refinement)");
    }
    throw convergence_error(stage + ": adaptive refinement did not reach the convexity regime",
                            std::nullopt, std::numeric_limits<double>::quiet_NaN());
  };

  auto run_relax = [&](NetMap& map, const std::string& stage) {
    try {
      RelaxationReport report = relax(map, relax_opt);
      if (report.termination != Termination::Converged)
        throw convergence_error(stage + ": relaxation stopped at the sweep cap with residual " +
                                    std::to_string(report.final_residual),
                                std::nullopt, report.final_residual);
      map = std::move(report.final_map);
    } catch (const ambiguity_error& e) {
      throw ambiguity_error(stage + ": " + e.what());
    }
  };

  auto_refine(f, "initial stage");
  run_relax(f, "initial relaxation");
  for (int round = 1; round <= options.refinements; ++round) {
    const std::string stage = "refinement round " + std::to_string(round);
    refine_once(f, stage);
    auto_refine(f, stage);
    run_relax(f, stage);
  }
  return f;
}

}  // namespace hnet
