#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <vector>

#include "hnet/net.hpp"
#include "hnet/rng.hpp"

using namespace hnet;

namespace {

Space space_for(int kind) {
  switch (kind) {
    case 0: return Space::euclidean(3);
    case 1: return Space::sphere(2);
    case 2: return Space::hyperbolic(2);
    case 3: return Space::circle();
    default:
      return Space::tree(TreeStructure(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}}));
  }
}

const char* space_name(int kind) {
  switch (kind) {
    case 0: return "euclidean";
    case 1: return "sphere";
    case 2: return "hyperbolic";
    case 3: return "circle";
    default: return "tree";
  }
}

void bench_distance(benchmark::State& state) {
  const Space s = space_for(static_cast<int>(state.range(0)));
  Xorshift64Star rng(1);
  const Point a = s.random_point(rng);
  const Point b = s.random_point(rng);
  for (auto _ : state) benchmark::DoNotOptimize(s.distance(a, b));
}

void bench_center_of_gravity(benchmark::State& state) {
  const Space s = space_for(static_cast<int>(state.range(0)));
  Xorshift64Star rng(2);
  const Point center = s.random_point(rng);
  std::vector<Point> pts;
  std::vector<double> ws;
  for (int j = 0; j < 6; ++j) {
    Point p = center;
    if (s.kind() == SpaceKind::Tree) {
      p = s.random_point(rng);
    } else {
      const Point q = s.random_point(rng);
      const double d = s.distance(center, q);
      if (d > 1e-9) p = s.interpolate(center, q, std::min(1.0, 0.2 / d));
    }
    pts.push_back(std::move(p));
    ws.push_back(1.0 + 0.1 * j);
  }
  MeanOptions opt;
  for (auto _ : state) benchmark::DoNotOptimize(s.weighted_center_of_gravity(pts, ws, opt));
}

void bench_relax_sweeps(benchmark::State& state) {
  const Space s = space_for(static_cast<int>(state.range(0)));
  auto g = std::make_shared<const WeightedGraph>(make_bipartite(path_graph(64, 1.0)).graph);
  Xorshift64Star rng(3);
  const Point a = s.random_point(rng);
  Point b = a;
  if (s.kind() == SpaceKind::Tree) {
    b = s.random_point(rng);
  } else {
    const Point q = s.random_point(rng);
    const double d = s.distance(a, q);
    if (d > 1e-9) b = s.interpolate(a, q, std::min(1.0, 0.8 / d));
  }
  std::vector<Point> images;
  for (int k = 0; k <= 64; ++k) images.push_back(s.interpolate(a, b, k / 64.0));
  const NetMap f(g, s, std::move(images), {0, 64});
  for (auto _ : state) {
    const NetMap swept = rho(rho(f, 1), 2);
    benchmark::DoNotOptimize(energy(swept));
  }
}

void bench_refine_map(benchmark::State& state) {
  const Space s = space_for(static_cast<int>(state.range(0)));
  auto g = std::make_shared<const WeightedGraph>(path_graph(64, 1.0));
  Xorshift64Star rng(4);
  const Point a = s.random_point(rng);
  Point b = a;
  if (s.kind() == SpaceKind::Tree) {
    b = s.random_point(rng);
  } else {
    const Point q = s.random_point(rng);
    const double d = s.distance(a, q);
    if (d > 1e-9) b = s.interpolate(a, q, std::min(1.0, 0.8 / d));
  }
  std::vector<Point> images;
  for (int k = 0; k <= 64; ++k) images.push_back(s.interpolate(a, b, k / 64.0));
  const NetMap f(g, s, std::move(images));
  for (auto _ : state) {
    auto [rg, record] = refine(f.graph());
    const NetMap fr =
        refine_map(f, std::make_shared<const WeightedGraph>(std::move(rg)), record);
    benchmark::DoNotOptimize(energy(fr));
  }
}

void add_space_args(benchmark::internal::Benchmark* b) {
  for (int kind = 0; kind < 5; ++kind) b->Arg(kind);
}

}  // namespace

BENCHMARK(bench_distance)->Apply(add_space_args);
BENCHMARK(bench_center_of_gravity)->Apply(add_space_args);
BENCHMARK(bench_relax_sweeps)->Apply(add_space_args);
BENCHMARK(bench_refine_map)->Apply(add_space_args);

BENCHMARK_MAIN();
