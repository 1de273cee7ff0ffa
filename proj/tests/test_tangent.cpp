#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "hnet/tangent.hpp"
#include "support/test_support.hpp"

using namespace hnet;
using hnet_test::tripod;

namespace {
constexpr double pi = std::numbers::pi;

std::shared_ptr<const WeightedGraph> shared(WeightedGraph g) {
  return std::make_shared<const WeightedGraph>(std::move(g));
}
}  // namespace

TEST_CASE("angle: reference values") {
  const Space e = Space::euclidean(2);
  CHECK(angle(e, Point::from_coords({0, 0}), Point::from_coords({1, 0}),
              Point::from_coords({0, 1})) == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(angle(e, Point::from_coords({0, 0}), Point::from_coords({2, 3}),
              Point::from_coords({2, 3})) == doctest::Approx(0.0));

  const Space s = Space::sphere(2);
  CHECK(angle(s, Point::from_coords({0, 0, 1}), Point::from_coords({1, 0, 0}),
              Point::from_coords({-1, 0, 0})) == doctest::Approx(pi).epsilon(1e-12));

  CHECK_THROWS_AS(angle(Space::tree(tripod()), Point::on_edge(0, 0.0), Point::on_edge(0, 1.0),
                        Point::on_edge(1, 1.0)),
                  unsupported_capability_error);
  // degenerate direction
  CHECK_THROWS_AS(angle(e, Point::from_coords({0, 0}), Point::from_coords({0, 0}),
                        Point::from_coords({1, 0})),
                  hnet::domain_error);
}

TEST_CASE("angle: symmetric, zero only for positively parallel logs") {
  Xorshift64Star rng(67);
  const Space e = Space::euclidean(3);
  for (int it = 0; it < 50; ++it) {
    const Point base = e.random_point(rng);
    const Point q = e.random_point(rng);
    const Point r = e.random_point(rng);
    if (e.distance(base, q) < 1e-6 || e.distance(base, r) < 1e-6) continue;
    CHECK(angle(e, base, q, r) == doctest::Approx(angle(e, base, r, q)).epsilon(1e-12));
  }
  // scaling the same direction keeps the angle at zero
  const Point base = Point::from_coords({1.0, 2.0, 3.0});
  const Point q = Point::from_coords({2.0, 2.0, 3.0});
  const Point r = Point::from_coords({4.0, 2.0, 3.0});
  CHECK(angle(e, base, q, r) == doctest::Approx(0.0));
  const Point opposite = Point::from_coords({0.0, 2.0, 3.0});
  CHECK(angle(e, base, q, opposite) == doctest::Approx(pi));
}

TEST_CASE("cone distance: law of cosines, apex, reflex branch") {
  const Space e = Space::euclidean(2);
  const Point base = Point::from_coords({0, 0});
  const TangentVector ex(base, {1.0, 0.0});
  const TangentVector ey(base, {0.0, 1.0});
  // radii 3 and 4 at a right angle
  CHECK(cone_distance(e, ConePoint{ex, 3.0}, ConePoint{ey, 4.0}) ==
        doctest::Approx(5.0).epsilon(1e-14));
  // apex identification
  CHECK(cone_distance(e, ConePoint{ex, 0.0}, ConePoint{ey, 2.5}) == doctest::Approx(2.5));
  CHECK(cone_distance(e, ConePoint{ey, 0.0}, ConePoint{ex, 0.0}) == doctest::Approx(0.0));
  // opposite rays: theta >= pi branch adds the radii
  const TangentVector mx(base, {-1.0, 0.0});
  CHECK(cone_distance(e, ConePoint{ex, 1.0}, ConePoint{mx, 2.0}) ==
        doctest::Approx(3.0).epsilon(1e-14));

  // tree rays at the hub meet at angle pi
  const Space t = Space::tree(tripod());
  const auto dirs = incident_directions(t, Point::on_edge(0, 0.0));
  REQUIRE(dirs.size() == 3);
  CHECK(cone_distance(t, ConePoint{dirs[0], 1.0}, ConePoint{dirs[1], 2.0}) ==
        doctest::Approx(3.0));
  CHECK(cone_distance(t, ConePoint{dirs[0], 1.0}, ConePoint{dirs[0], 3.0}) ==
        doctest::Approx(2.0));

  // base points must agree
  const TangentVector other(Point::from_coords({5, 5}), {1.0, 0.0});
  CHECK_THROWS_AS(cone_distance(e, ConePoint{ex, 1.0}, ConePoint{other, 1.0}),
                  hnet::domain_error);
}

TEST_CASE("criticality residual: hand values on the line") {
  auto g = shared(make_bipartite(path_graph(2, 1.0)).graph);
  const Space e = Space::euclidean(1);
  // symmetric neighbors at +-1: residual 0
  const NetMap sym(g, e, {Point::from_coords({-1.0}), Point::from_coords({0.0}),
                          Point::from_coords({1.0})});
  CHECK(criticality_residual(sym, 1) == doctest::Approx(0.0));
  // off-center: |(-1.5) + (0.5)| / 2 = 0.5
  const NetMap off(g, e, {Point::from_coords({-1.0}), Point::from_coords({0.5}),
                          Point::from_coords({1.0})});
  CHECK(criticality_residual(off, 1) == doctest::Approx(0.5).epsilon(1e-14));

  const Space t = Space::tree(tripod());
  const NetMap tree_map(g, t,
                        {Point::on_edge(0, 1.0), Point::on_edge(0, 0.0), Point::on_edge(1, 1.0)});
  CHECK_THROWS_AS(criticality_residual(tree_map, 1), unsupported_capability_error);
}

TEST_CASE("criticality residual: vanishes on converged maps") {
  const Space s = Space::sphere(2);
  const NetMap f = trace_geodesic(s, Point::from_coords({0, 0, 1}),
                                  Point::from_coords({std::sin(1.0), 0, std::cos(1.0)}),
                                  GeodesicOptions{.segments = 8, .tolerance = 1e-9});
  for (int i = 1; i + 1 < f.graph().vertex_count(); ++i)
    CHECK(criticality_residual(f, i) < 1e-6);

  // matches the harmonicity residual scale on every smooth space
  for (const Space& space :
       {Space::euclidean(2), Space::hyperbolic(2), Space::circle()}) {
    Xorshift64Star rng(71);
    const Point a = space.random_point(rng);
    const Point b = hnet_test::random_point_near(space, a, 0.8, rng);
    if (space.distance(a, b) < 0.1) continue;
    const NetMap traced = trace_geodesic(space, a, b,
                                         GeodesicOptions{.segments = 6, .tolerance = 1e-9});
    for (int i = 1; i + 1 < traced.graph().vertex_count(); ++i)
      CHECK(criticality_residual(traced, i) < 1e-6);
  }
}

TEST_CASE("variational inequality: harmonic vertices never see positive directions") {
  const Space s = Space::sphere(2);
  const NetMap f = trace_geodesic(s, Point::from_coords({0, 0, 1}),
                                  Point::from_coords({1, 0, 0}),
                                  GeodesicOptions{.segments = 8, .tolerance = 1e-9});
  Xorshift64Star rng(73);
  for (int i = 1; i + 1 < f.graph().vertex_count(); ++i) {
    std::vector<TangentVector> dirs;
    for (int k = 0; k < 32; ++k) {
      // random unit tangent at f(i)
      const Point helper = hnet_test::random_point_near(s, f.image(i), 0.5, rng);
      if (s.distance(helper, f.image(i)) < 1e-6) continue;
      TangentVector v = s.log_map(f.image(i), helper);
      std::vector<double> comp = v.components();
      const double n = s.tangent_norm(v);
      for (double& c : comp) c /= n;
      dirs.emplace_back(f.image(i), std::move(comp));
    }
    CHECK(variational_inequality_check(f, i, dirs) <= 1e-6);
  }
}

TEST_CASE("variational inequality: tripod hub and descent directions") {
  const Space t = Space::tree(tripod());
  auto g = shared(WeightedGraph(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}},
                                std::vector<int>{0, 1, 1, 1}));
  const NetMap f(g, t,
                 {Point::on_edge(0, 0.0), Point::on_edge(0, 1.0), Point::on_edge(1, 1.0),
                  Point::on_edge(2, 1.0)},
                 {1, 2, 3});
  // at the hub every ray pulls +1 and is pulled back -2
  const auto dirs = incident_directions(t, f.image(0));
  CHECK(variational_inequality_check(f, 0, dirs) == doctest::Approx(-1.0).epsilon(1e-12));

  // a non-harmonic euclidean vertex admits a strictly positive direction
  auto pg = shared(make_bipartite(path_graph(2, 1.0)).graph);
  const Space e = Space::euclidean(1);
  const NetMap off(pg, e, {Point::from_coords({0.0}), Point::from_coords({0.9}),
                           Point::from_coords({1.0})});
  const TangentVector descent(off.image(1), {-1.0});
  const std::vector<TangentVector> d{descent};
  CHECK(variational_inequality_check(off, 1, d) > 0.1);

  CHECK_THROWS_AS(variational_inequality_check(off, 1, std::vector<TangentVector>{}),
                  hnet::domain_error);
}

TEST_CASE("incident directions: interior points have two, vertices their degree") {
  const Space t = Space::tree(tripod());
  CHECK(incident_directions(t, Point::on_edge(0, 0.5)).size() == 2);
  CHECK(incident_directions(t, Point::on_edge(0, 0.0)).size() == 3);   // hub
  CHECK(incident_directions(t, Point::on_edge(1, 1.0)).size() == 1);   // leaf
  CHECK_THROWS_AS(incident_directions(Space::euclidean(2), Point::from_coords({0, 0})),
                  unsupported_capability_error);
}
