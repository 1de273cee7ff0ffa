#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hnet/errors.hpp"
#include "hnet/point.hpp"
#include "hnet/rng.hpp"
#include "hnet/tree_space.hpp"

namespace hnet {

enum class SpaceKind { Euclidean, Sphere, Hyperbolic, Circle, Tree };

std::string to_string(SpaceKind kind);

/// Knobs for the weighted center-of-gravity solver.
struct MeanOptions {
  /// First-order residual target: gradient norm on smooth spaces, worst
  /// one-sided derivative violation on trees.
  double tolerance = 1e-10;
  int max_iterations = 10000;
  /// Initial iterate; also serves as witness for the uniqueness-ball
  /// precondition. Defaults to the first input point.
  std::optional<Point> hint;
};

/// Iteration cap reached before the residual target; carries the best
/// iterate seen and its residual.
class convergence_error : public error {
 public:
  convergence_error(const std::string& message, std::optional<Point> best_iterate,
                    double residual)
      : error(message), best_(std::move(best_iterate)), residual_(residual) {}

  const std::optional<Point>& best_iterate() const { return best_; }
  double residual() const { return residual_; }

 private:
  std::optional<Point> best_;
  double residual_;
};

/// One of the five model geometries. Spaces are immutable values: all
/// operations are pure and safe for unsynchronized concurrent use.
class Space {
 public:
  static Space euclidean(int dimension);
  /// Unit n-sphere embedded in R^{n+1}.
  static Space sphere(int dimension);
  /// Hyperboloid model in R^{n+1} (Minkowski form <x,x> = -1, x0 >= 1).
  static Space hyperbolic(int dimension);
  static Space circle();
  static Space tree(TreeStructure structure);
  static Space tree(std::shared_ptr<const TreeStructure> structure);

  SpaceKind kind() const { return kind_; }
  /// Manifold dimension; 1 for the circle and for trees.
  int dimension() const { return dim_; }
  /// Number of stored coordinates for points of this space (0 for trees).
  std::size_t coordinate_arity() const;
  const TreeStructure& tree_structure() const;
  std::shared_ptr<const TreeStructure> tree_ptr() const { return tree_; }

  /// Radius of unique refinement r(N): midpoints of points at distance
  /// <= 2 r(N) are unique. Infinity on euclidean/hyperbolic/tree.
  double unique_midpoint_radius() const { return r_; }
  /// Convexity radius c(N): centers of gravity of points inside a ball
  /// of this radius are unique. Always c(N) <= r(N).
  double convexity_radius() const { return c_; }
  /// True when log/exp maps are available (everything but trees).
  bool smooth() const { return kind_ != SpaceKind::Tree; }

  /// Throws invalid_point_error on representation or constraint violations.
  void validate_point(const Point& p) const;
  Point canonical(const Point& p) const;
  bool points_equal(const Point& p, const Point& q) const;

  double distance(const Point& p, const Point& q) const;

  /// Point at parameter t in [0,1] along the minimizing geodesic from p
  /// to q. Requires d(p,q) <= 2 r(N); antipodal pairs raise ambiguity.
  Point interpolate(const Point& p, const Point& q, double t) const;
  Point midpoint(const Point& p, const Point& q) const;

  /// Minimizer of F(x) = sum_j w_j^2 d^2(x, p_j). Weights are passed raw
  /// and squared internally. Closed form on euclidean and for up to two
  /// points; fixed-point iteration on sphere/hyperbolic/circle; exact
  /// per-edge convex search on trees.
  Point weighted_center_of_gravity(std::span<const Point> points,
                                   std::span<const double> weights,
                                   const MeanOptions& options = {}) const;

  TangentVector log_map(const Point& base, const Point& target) const;
  Point exp_map(const Point& base, const TangentVector& v) const;

  /// Inner product of two tangent vectors at the same base point
  /// (Minkowski form on hyperbolic space, cone product on trees).
  double tangent_inner(const TangentVector& a, const TangentVector& b) const;
  double tangent_norm(const TangentVector& v) const;

  /// Deterministic seeded sample; distributions are fixed per space (see
  /// README) so runs reproduce bit-for-bit.
  Point random_point(Xorshift64Star& rng) const;

  /// Textual form: "euclidean:n", "sphere:n", "hyperbolic:n", "circle",
  /// "tree:<path>". Tree spaces must have been loaded from a file.
  std::string descriptor() const;

  bool same_space(const Space& other) const;

 private:
  Space(SpaceKind kind, int dim, std::shared_ptr<const TreeStructure> tree, double r, double c)
      : kind_(kind), dim_(dim), tree_(std::move(tree)), r_(r), c_(c) {}

  SpaceKind kind_ = SpaceKind::Euclidean;
  int dim_ = 1;
  std::shared_ptr<const TreeStructure> tree_;
  double r_ = 0.0;
  double c_ = 0.0;
};

}  // namespace hnet
