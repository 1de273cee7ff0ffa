// Acceptance suite: one pass/fail line per criterion, exit 0 only when
// every criterion holds at its stated tolerance.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hnet/net.hpp"
#include "hnet/tangent.hpp"
#include "support/test_support.hpp"

using namespace hnet;
using hnet_test::random_graph;
using hnet_test::random_map_in_ball;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::shared_ptr<const WeightedGraph> shared(WeightedGraph g) {
  return std::make_shared<const WeightedGraph>(std::move(g));
}

struct RandomPair {
  NetMap map;
  std::shared_ptr<const WeightedGraph> graph;
};

RandomPair random_pair(Xorshift64Star& rng, const Space& s, double radius, bool bipartite) {
  auto g = shared(random_graph(rng, 10, bipartite));
  NetMap f = random_map_in_ball(g, s, rng, radius);
  return {std::move(f), std::move(g)};
}

// ---- criteria 1 and 2 share the randomized refinement corpus ----------

struct RefinementCorpusResult {
  Outcome energy;
  Outcome halving;
};

RefinementCorpusResult refinement_corpus() {
  RefinementCorpusResult out;
  const auto spaces = hnet_test::all_spaces();
  Xorshift64Star rng(101);
  const auto start = Clock::now();
  int pairs = 0;
  double worst_energy = 0.0, worst_halving = 0.0;
  for (int it = 0; it < 200; ++it) {
    const Space& s = spaces[it % spaces.size()];
    auto [f, g] = random_pair(rng, s, 0.6, false);
    auto [rg, record] = refine(*g);
    const NetMap fr = refine_map(f, shared(std::move(rg)), record);

    const double e = energy(f);
    const double diff = std::abs(energy(fr) - e) / std::max(1.0, e);
    worst_energy = std::max(worst_energy, diff);
    if (diff > 1e-10) out.energy.pass = false;

    for (int i = 0; i < g->vertex_count(); ++i) {
      const double ei = vertex_energy(f, i);
      const double hdiff = std::abs(vertex_energy(fr, i) - 0.5 * ei) / std::max(1.0, ei);
      worst_halving = std::max(worst_halving, hdiff);
      if (hdiff > 1e-10) out.halving.pass = false;
    }
    ++pairs;
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 5.0) out.energy.pass = false;

  std::ostringstream d1;
  d1 << pairs << " randomized pairs over 5 spaces, worst relative deviation " << worst_energy
     << ", " << elapsed << "s (budget 5s)";
  out.energy.detail = d1.str();
  std::ostringstream d2;
  d2 << "same corpus, worst relative halving deviation " << worst_halving;
  out.halving.detail = d2.str();
  return out;
}

Outcome monotonicity() {
  Outcome out;
  const auto spaces = hnet_test::all_spaces();
  Xorshift64Star rng(103);
  double worst = -1e300;
  for (int it = 0; it < 500; ++it) {
    const Space& s = spaces[it % spaces.size()];
    auto [f, g] = random_pair(rng, s, 0.3, true);
    const int alpha = 1 + rng.uniform_int(0, 1);
    const double increase = energy(rho(f, alpha)) - energy(f);
    worst = std::max(worst, increase);
    if (increase > 1e-12) out.pass = false;
  }
  std::ostringstream d;
  d << "500 half-sweeps, worst energy increase " << worst << " (slack 1e-12)";
  out.detail = d.str();
  return out;
}

Outcome fixed_point_characterization() {
  Outcome out;
  const auto spaces = hnet_test::all_spaces();
  Xorshift64Star rng(107);

  double worst_eq = 0.0;
  int converged_checked = 0;
  for (int it = 0; converged_checked < 50 && it < 200; ++it) {
    const Space& s = spaces[it % spaces.size()];
    auto [f, g] = random_pair(rng, s, 0.25, true);
    std::vector<int> pins;
    if (it % 2 == 0) pins.push_back(rng.uniform_int(0, g->vertex_count() - 1));
    NetMap seeded(g, s, f.images(), pins);
    const auto report = relax(seeded, RelaxOptions{.tolerance = 1e-9, .max_sweeps = 50000});
    if (report.termination != Termination::Converged) continue;
    const auto [before, after] = fixed_point_energy_test(report.final_map);
    worst_eq = std::max(worst_eq, std::abs(after - before));
    if (std::abs(after - before) > 1e-10) out.pass = false;
    ++converged_checked;
  }
  if (converged_checked < 50) out.pass = false;

  double smallest_drop = 1e300;
  int rough_checked = 0;
  for (int it = 0; rough_checked < 50 && it < 400; ++it) {
    const Space& s = spaces[it % spaces.size()];
    auto [f, g] = random_pair(rng, s, 0.3, true);
    if (harmonicity_residual(f) <= 1e-3) continue;
    const auto [before, after] = fixed_point_energy_test(f);
    smallest_drop = std::min(smallest_drop, before - after);
    if (before - after < 1e-9) out.pass = false;
    ++rough_checked;
  }
  if (rough_checked < 50) out.pass = false;

  std::ostringstream d;
  d << converged_checked << " converged maps, worst |E(rho2 rho1 f) - E(f)| = " << worst_eq
    << "; " << rough_checked << " rough maps, smallest drop " << smallest_drop;
  out.detail = d.str();
  return out;
}

Outcome euclidean_oracle() {
  Outcome out;
  Xorshift64Star rng(109);
  const Space s = Space::euclidean(3);
  const auto start = Clock::now();
  double worst = 0.0;
  for (int it = 0; it < 20; ++it) {
    const auto g = shared(random_graph(rng, 20, /*ensure_even_cycles=*/true));
    if (g->vertex_count() > 50) {
      out.pass = false;
      out.detail = "generator exceeded the 50 vertex bound";
      return out;
    }
    const int pin_count = rng.uniform_int(2, 4);
    std::map<int, Point> pins;
    while (static_cast<int>(pins.size()) < std::min(pin_count, g->vertex_count())) {
      const int v = rng.uniform_int(0, g->vertex_count() - 1);
      pins.emplace(v, s.random_point(rng));
    }
    std::vector<Point> images;
    std::vector<int> pin_list;
    for (int i = 0; i < g->vertex_count(); ++i) images.push_back(s.random_point(rng));
    for (const auto& [v, p] : pins) {
      images[v] = p;
      pin_list.push_back(v);
    }
    const NetMap f(g, s, std::move(images), std::move(pin_list));
    const auto report = relax(f, RelaxOptions{.tolerance = 1e-10, .max_sweeps = 200000});
    if (report.termination != Termination::Converged) {
      out.pass = false;
      continue;
    }
    const auto oracle = hnet_test::dirichlet_solve(*g, pins, 3);
    for (int i = 0; i < g->vertex_count(); ++i)
      for (int k = 0; k < 3; ++k) {
        const double err =
            std::abs(report.final_map.image(i).coords()[k] - oracle[i].coords()[k]);
        worst = std::max(worst, err);
        if (err > 1e-8) out.pass = false;
      }
  }
  const double elapsed = seconds_since(start);
  if (elapsed >= 10.0) out.pass = false;
  std::ostringstream d;
  d << "20 pinned graphs vs direct Dirichlet solve, worst coordinate error " << worst << ", "
    << elapsed << "s (budget 10s)";
  out.detail = d.str();
  return out;
}

Outcome sphere_geodesic() {
  Outcome out;
  const auto start = Clock::now();
  const Space s = Space::sphere(2);
  const Point a = Point::from_coords({0, 0, 1});
  const Point b = Point::from_coords({std::sin(1.0), 0, std::cos(1.0)});  // 1 radian apart

  // seeded tangential perturbation of the interior so relaxation does
  // real work
  auto bp = make_bipartite(path_graph(16, 1.0));
  auto g = shared(std::move(bp.graph));
  Xorshift64Star rng(113);
  std::vector<Point> images;
  for (int k = 0; k <= 16; ++k) {
    Point p = s.interpolate(a, b, k / 16.0);
    if (k != 0 && k != 16) p = hnet_test::random_point_near(s, p, 0.03, rng);
    images.push_back(std::move(p));
  }
  const NetMap seeded(g, s, std::move(images), {0, 16});
  const auto report = relax(seeded, RelaxOptions{.tolerance = 1e-9, .max_sweeps = 50000});
  if (report.termination != Termination::Converged) {
    out.pass = false;
    out.detail = "relaxation did not converge";
    return out;
  }
  const NetMap& f = report.final_map;

  // great circle of a and b: normal direction is a x b normalized
  const auto& av = a.coords();
  const auto& bv = b.coords();
  std::vector<double> n{av[1] * bv[2] - av[2] * bv[1], av[2] * bv[0] - av[0] * bv[2],
                        av[0] * bv[1] - av[1] * bv[0]};
  const double nn = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  for (double& c : n) c /= nn;

  double worst_plane = 0.0, worst_gap = 0.0, worst_mid = 0.0;
  std::vector<double> gaps;
  for (int k = 0; k <= 16; ++k) {
    const auto& x = f.image(k).coords();
    worst_plane = std::max(worst_plane, std::abs(x[0] * n[0] + x[1] * n[1] + x[2] * n[2]));
  }
  for (int k = 0; k < 16; ++k) gaps.push_back(s.distance(f.image(k), f.image(k + 1)));
  for (double gap : gaps) worst_gap = std::max(worst_gap, std::abs(gap - gaps[0]));
  for (int k = 1; k < 16; ++k) {
    const double d = s.distance(f.image(k - 1), f.image(k + 1));
    worst_mid = std::max({worst_mid, std::abs(s.distance(f.image(k), f.image(k - 1)) - d / 2),
                          std::abs(s.distance(f.image(k), f.image(k + 1)) - d / 2)});
  }
  const double elapsed = seconds_since(start);
  out.pass = worst_plane < 1e-6 && worst_gap < 1e-6 && worst_mid < 1e-8 && elapsed < 5.0;
  std::ostringstream d;
  d << "plane deviation " << worst_plane << ", gap spread " << worst_gap
    << ", midpoint defect " << worst_mid << ", " << elapsed << "s (budget 5s)";
  out.detail = d.str();
  return out;
}

Outcome circle_cycle() {
  Outcome out;
  const Space c = Space::circle();
  std::vector<WeightedGraph::Edge> edges;
  for (int k = 0; k < 8; ++k) edges.push_back({k, (k + 1) % 8, 1.0});
  auto g = shared(make_bipartite(WeightedGraph(8, std::move(edges))).graph);

  Xorshift64Star rng(127);
  std::vector<Point> images;
  for (int k = 0; k < 8; ++k)
    images.push_back(Point::from_angle(2 * pi * k / 8 + rng.uniform(-0.05, 0.05)));
  const NetMap f(g, c, std::move(images));
  const auto report = relax(f, RelaxOptions{.tolerance = 1e-9, .max_sweeps = 50000});
  if (report.termination != Termination::Converged) {
    out.pass = false;
    out.detail = "relaxation did not converge";
    return out;
  }
  double worst_gap = 0.0;
  for (int k = 0; k < 8; ++k) {
    const double gap =
        c.distance(report.final_map.image(k), report.final_map.image((k + 1) % 8));
    worst_gap = std::max(worst_gap, std::abs(gap - pi / 4));
  }
  const double e = energy(report.final_map);
  const double energy_err = std::abs(e - 8 * 2 * (pi / 4) * (pi / 4));
  out.pass = worst_gap < 1e-6 && energy_err < 1e-8;
  std::ostringstream d;
  d << "winding-1 start, worst gap deviation " << worst_gap << ", |E - pi^2| = " << energy_err;
  out.detail = d.str();
  return out;
}

struct ConvergedSuite {
  std::vector<NetMap> smooth_maps;  // euclidean, sphere, hyperbolic, circle
  std::vector<NetMap> tree_maps;
};

ConvergedSuite converged_suite() {
  ConvergedSuite suite;
  const GeodesicOptions opt{.segments = 8, .refinements = 0, .tolerance = 1e-9};
  suite.smooth_maps.push_back(trace_geodesic(Space::euclidean(2), Point::from_coords({0, 0}),
                                             Point::from_coords({3, 4}), opt));
  suite.smooth_maps.push_back(
      trace_geodesic(Space::sphere(2), Point::from_coords({0, 0, 1}),
                     Point::from_coords({std::sin(1.0), 0, std::cos(1.0)}), opt));
  suite.smooth_maps.push_back(
      trace_geodesic(Space::hyperbolic(2), Point::from_coords({1, 0, 0}),
                     Point::from_coords({std::cosh(1.2), std::sinh(1.2), 0}), opt));

  // circle: unpinned winding cycle
  {
    const Space c = Space::circle();
    std::vector<WeightedGraph::Edge> edges;
    for (int k = 0; k < 8; ++k) edges.push_back({k, (k + 1) % 8, 1.0});
    auto g = shared(make_bipartite(WeightedGraph(8, std::move(edges))).graph);
    Xorshift64Star rng(131);
    std::vector<Point> images;
    for (int k = 0; k < 8; ++k)
      images.push_back(Point::from_angle(2 * pi * k / 8 + rng.uniform(-0.04, 0.04)));
    auto report = relax(NetMap(g, c, std::move(images)),
                        RelaxOptions{.tolerance = 1e-9, .max_sweeps = 50000});
    suite.smooth_maps.push_back(std::move(report.final_map));
  }

  // trees: star into an asymmetric tripod configuration, and a pinned
  // path into the caterpillar tree
  {
    const Space t = Space::tree(hnet_test::tripod());
    auto star = shared(WeightedGraph(4, {{0, 1, 1.0}, {0, 2, 1.3}, {0, 3, 0.8}},
                                     std::vector<int>{0, 1, 1, 1}));
    const NetMap f(star, t,
                   {Point::on_edge(0, 0.2), Point::on_edge(0, 0.9), Point::on_edge(1, 0.5),
                    Point::on_edge(2, 0.85)},
                   {1, 2, 3});
    auto report = relax(f, RelaxOptions{.tolerance = 1e-10, .max_sweeps = 50000});
    suite.tree_maps.push_back(std::move(report.final_map));

    const Space cat = Space::tree(hnet_test::caterpillar());
    auto pathg = shared(make_bipartite(path_graph(6, 1.0)).graph);
    std::vector<Point> images;
    const Point from = Point::on_edge(1, 1.0);
    const Point to = Point::on_edge(2, 2.0);
    for (int k = 0; k <= 6; ++k) images.push_back(cat.interpolate(from, to, k / 6.0));
    auto report2 = relax(NetMap(pathg, cat, std::move(images), {0, 6}),
                         RelaxOptions{.tolerance = 1e-10, .max_sweeps = 50000});
    suite.tree_maps.push_back(std::move(report2.final_map));
  }
  return suite;
}

Outcome criticality(const ConvergedSuite& suite) {
  Outcome out;
  double worst_smooth = 0.0, worst_tree = -1e300;
  for (const NetMap& f : suite.smooth_maps) {
    for (int i = 0; i < f.graph().vertex_count(); ++i) {
      if (f.pinned(i) || f.graph().degree(i) == 0) continue;
      const double r = criticality_residual(f, i);
      worst_smooth = std::max(worst_smooth, r);
      if (r >= 1e-6) out.pass = false;
    }
  }
  for (const NetMap& f : suite.tree_maps) {
    for (int i = 0; i < f.graph().vertex_count(); ++i) {
      if (f.pinned(i) || f.graph().degree(i) == 0) continue;
      const auto dirs = incident_directions(f.space(), f.image(i));
      const double v = variational_inequality_check(f, i, dirs);
      worst_tree = std::max(worst_tree, v);
      if (v >= 1e-6) out.pass = false;
    }
  }
  std::ostringstream d;
  d << "smooth worst criticality residual " << worst_smooth
    << "; tree worst variational value " << worst_tree;
  out.detail = d.str();
  return out;
}

Outcome refinement_closure(const ConvergedSuite& suite) {
  Outcome out;
  double worst = 0.0;
  auto check = [&](const NetMap& f) {
    auto [rg, record] = refine(f.graph());
    const NetMap fr = refine_map(f, shared(std::move(rg)), record);
    const double r = harmonicity_residual(fr);
    worst = std::max(worst, r);
    if (r >= 1e-8) out.pass = false;
  };
  for (const NetMap& f : suite.smooth_maps) check(f);
  for (const NetMap& f : suite.tree_maps) check(f);
  std::ostringstream d;
  d << "refined converged maps without relaxing, worst residual " << worst;
  out.detail = d.str();
  return out;
}

Outcome tripod_tree() {
  Outcome out;
  const Space t = Space::tree(hnet_test::tripod());

  auto star_map = [&](std::vector<Point> leaves, std::vector<double> weights) {
    auto g = shared(WeightedGraph(4,
                                  {{0, 1, weights[0]}, {0, 2, weights[1]}, {0, 3, weights[2]}},
                                  std::vector<int>{0, 1, 1, 1}));
    std::vector<Point> images{Point::on_edge(0, 0.37), leaves[0], leaves[1], leaves[2]};
    const NetMap f(g, t, std::move(images), {1, 2, 3});
    auto report = relax(f, RelaxOptions{.tolerance = 1e-10, .max_sweeps = 50000});
    return std::pair{report.final_map.image(0), std::move(leaves)};
  };

  // symmetric pins meet at the hub
  auto [sym_hub, sym_leaves] = star_map(
      {Point::on_edge(0, 1.0), Point::on_edge(1, 1.0), Point::on_edge(2, 1.0)}, {1, 1, 1});
  const double center_err = t.distance(sym_hub, Point::on_edge(0, 0.0));
  if (center_err >= 1e-8) out.pass = false;

  // three asymmetric configurations against the grid oracle
  const std::vector<std::pair<std::vector<Point>, std::vector<double>>> configs{
      {{Point::on_edge(0, 0.9), Point::on_edge(1, 0.5), Point::on_edge(2, 0.2)}, {1, 1, 1}},
      {{Point::on_edge(0, 1.0), Point::on_edge(1, 1.0), Point::on_edge(2, 0.1)},
       {1.0, 1.5, 0.7}},
      {{Point::on_edge(0, 0.7), Point::on_edge(1, 0.3), Point::on_edge(2, 0.6)},
       {2.0, 0.5, 1.0}}};
  double worst = center_err;
  for (const auto& [leaves, weights] : configs) {
    auto [hub, lv] = star_map(leaves, weights);
    const Point oracle = hnet_test::tree_grid_argmin(t, lv, weights, 1e-5);
    const double err = t.distance(hub, oracle);
    worst = std::max(worst, err);
    if (err >= 1e-4) out.pass = false;
  }
  std::ostringstream d;
  d << "symmetric hub error " << center_err << ", worst asymmetric grid-oracle distance "
    << worst;
  out.detail = d.str();
  return out;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, Outcome>> results;
  try {
    const auto corpus = refinement_corpus();
    results.emplace_back("refinement energy invariance", corpus.energy);
    results.emplace_back("per-vertex energy halving", corpus.halving);
    results.emplace_back("half-sweep energy monotonicity", monotonicity());
    results.emplace_back("fixed-point energy characterization", fixed_point_characterization());
    results.emplace_back("euclidean Dirichlet oracle equivalence", euclidean_oracle());
    results.emplace_back("sphere geodesic string", sphere_geodesic());
    results.emplace_back("circle winding cycle", circle_cycle());
    const auto suite = converged_suite();
    results.emplace_back("criticality at converged maps", criticality(suite));
    results.emplace_back("harmonic refinement closure", refinement_closure(suite));
    results.emplace_back("tripod tree centers", tripod_tree());
  } catch (const std::exception& e) {
    std::printf("FAIL  acceptance suite aborted: %s\n", e.what());
    return 1;
  }

  int failures = 0;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& [label, outcome] = results[k];
    std::printf("%s  %2zu  %s: %s\n", outcome.pass ? "PASS" : "FAIL", k + 1, label.c_str(),
                outcome.detail.c_str());
    if (!outcome.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
              results.size());
  return failures == 0 ? 0 : 1;
}
