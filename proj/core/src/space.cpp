#include "hnet/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace hnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
// Pairs closer to antipodal than this are rejected as ambiguous.
constexpr double kAntipodalSlack = 1e-9;

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec lincomb(double ca, const Vec& a, double cb, const Vec& b) {
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ca * a[i] + cb * b[i];
  return out;
}

void scale(Vec& a, double c) {
  for (double& x : a) x *= c;
}

// Minkowski form of signature (-,+,...,+).
double mdot(const Vec& a, const Vec& b) {
  double s = -a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

// Signed representative of b - a in (-pi, pi].
double wrap_signed(double delta) {
  double w = std::fmod(delta, kTwoPi);
  if (w > kPi) w -= kTwoPi;
  if (w <= -kPi) w += kTwoPi;
  return w;
}

void renormalize_sphere(Vec& x) {
  const double n = norm(x);
  if (n > 0.0) scale(x, 1.0 / n);
}

void renormalize_hyperboloid(Vec& x) {
  const double q = -mdot(x, x);
  if (q > 0.0) scale(x, 1.0 / std::sqrt(q));
  if (x[0] < 0.0) scale(x, -1.0);
}

}  // namespace

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::Euclidean: return "euclidean";
    case SpaceKind::Sphere: return "sphere";
    case SpaceKind::Hyperbolic: return "hyperbolic";
    case SpaceKind::Circle: return "circle";
    case SpaceKind::Tree: return "tree";
  }
  return "?";
}

Space Space::euclidean(int dimension) {
  if (dimension < 1) throw domain_error("euclidean dimension must be >= 1");
  return Space(SpaceKind::Euclidean, dimension, nullptr, kInf, kInf);
}

Space Space::sphere(int dimension) {
  if (dimension < 1) throw domain_error("sphere dimension must be >= 1");
  return Space(SpaceKind::Sphere, dimension, nullptr, kPi / 2.0, kPi / 4.0);
}

Space Space::hyperbolic(int dimension) {
  if (dimension < 1) throw domain_error("hyperbolic dimension must be >= 1");
  return Space(SpaceKind::Hyperbolic, dimension, nullptr, kInf, kInf);
}

Space Space::circle() { return Space(SpaceKind::Circle, 1, nullptr, kPi / 2.0, kPi / 4.0); }

Space Space::tree(TreeStructure structure) {
  return tree(std::make_shared<const TreeStructure>(std::move(structure)));
}

Space Space::tree(std::shared_ptr<const TreeStructure> structure) {
  if (!structure) throw domain_error("tree space needs a structure");
  return Space(SpaceKind::Tree, 1, std::move(structure), kInf, kInf);
}

std::size_t Space::coordinate_arity() const {
  switch (kind_) {
    case SpaceKind::Euclidean: return static_cast<std::size_t>(dim_);
    case SpaceKind::Sphere:
    case SpaceKind::Hyperbolic: return static_cast<std::size_t>(dim_) + 1;
    case SpaceKind::Circle: return 1;
    case SpaceKind::Tree: return 0;
  }
  return 0;
}

const TreeStructure& Space::tree_structure() const {
  if (kind_ != SpaceKind::Tree) throw domain_error("not a tree space");
  return *tree_;
}

bool Space::same_space(const Space& other) const {
  if (kind_ != other.kind_ || dim_ != other.dim_) return false;
  if (kind_ == SpaceKind::Tree) return tree_ == other.tree_;
  return true;
}

std::string Space::descriptor() const {
  switch (kind_) {
    case SpaceKind::Euclidean: return "euclidean:" + std::to_string(dim_);
    case SpaceKind::Sphere: return "sphere:" + std::to_string(dim_);
    case SpaceKind::Hyperbolic: return "hyperbolic:" + std::to_string(dim_);
    case SpaceKind::Circle: return "circle";
    case SpaceKind::Tree:
      if (!tree_->source_path)
        throw domain_error("tree space has no source path; cannot form a descriptor");
      return "tree:" + *tree_->source_path;
  }
  return "?";
}

void Space::validate_point(const Point& p) const {
  if (kind_ == SpaceKind::Tree) {
    if (!p.is_tree())
      throw invalid_point_error("tree space expects edge/offset points");
    tree_->validate_point(p.tree());
    return;
  }
  if (p.is_tree())
    throw invalid_point_error(to_string(kind_) + " space expects coordinate points");
  const Vec& x = p.coords();
  if (x.size() != coordinate_arity())
    throw invalid_point_error(to_string(kind_) + ":" + std::to_string(dim_) + " expects " +
                              std::to_string(coordinate_arity()) + " coordinates, got " +
                              std::to_string(x.size()));
  for (double c : x)
    if (!std::isfinite(c)) throw invalid_point_error("point has a non-finite coordinate");
  switch (kind_) {
    case SpaceKind::Sphere:
      if (std::abs(norm(x) - 1.0) > 1e-12)
        throw invalid_point_error("sphere point norm deviates from 1 by more than 1e-12");
      break;
    case SpaceKind::Hyperbolic:
      if (std::abs(mdot(x, x) + 1.0) > 1e-10)
        throw invalid_point_error("hyperboloid constraint violated beyond 1e-10");
      if (x[0] < 1.0 - 1e-12)
        throw invalid_point_error("hyperboloid point must have x0 >= 1");
      break;
    case SpaceKind::Circle:
      if (x[0] < 0.0 || x[0] >= kTwoPi)
        throw invalid_point_error("circle angle must be the canonical representative in [0, 2*pi)");
      break;
    default:
      break;
  }
}

Point Space::canonical(const Point& p) const {
  validate_point(p);
  if (kind_ == SpaceKind::Tree) {
    const TreePoint c = tree_->canonical(p.tree());
    return Point::on_edge(c.edge, c.offset);
  }
  return p;
}

bool Space::points_equal(const Point& p, const Point& q) const {
  validate_point(p);
  validate_point(q);
  if (kind_ == SpaceKind::Tree) return tree_->equal(p.tree(), q.tree());
  return p.coords() == q.coords();
}

double Space::distance(const Point& p, const Point& q) const {
  validate_point(p);
  validate_point(q);
  switch (kind_) {
    case SpaceKind::Euclidean: {
      const Vec d = lincomb(1.0, p.coords(), -1.0, q.coords());
      return norm(d);
    }
    case SpaceKind::Sphere: {
      const Vec& a = p.coords();
      const Vec& b = q.coords();
      if (a == b) return 0.0;
      const double c = dot(a, b);
      const Vec rej = lincomb(1.0, b, -c, a);
      return std::atan2(norm(rej), c);
    }
    case SpaceKind::Hyperbolic: {
      // 2 asinh(|p-q|_M / 2): equals acosh(-<p,q>_M) but keeps full
      // precision near zero where the acosh form loses half the digits.
      if (p.coords() == q.coords()) return 0.0;
      const Vec diff = lincomb(1.0, p.coords(), -1.0, q.coords());
      return 2.0 * std::asinh(0.5 * std::sqrt(std::max(0.0, mdot(diff, diff))));
    }
    case SpaceKind::Circle: {
      const double d = std::abs(p.angle() - q.angle());
      return std::min(d, kTwoPi - d);
    }
    case SpaceKind::Tree:
      return tree_->distance(p.tree(), q.tree());
  }
  return 0.0;
}

Point Space::interpolate(const Point& p, const Point& q, double t) const {
  validate_point(p);
  validate_point(q);
  if (!(t >= 0.0) || !(t <= 1.0))
    throw domain_error("interpolation parameter " + std::to_string(t) + " outside [0,1]");
  switch (kind_) {
    case SpaceKind::Euclidean:
      return Point::from_coords(lincomb(1.0 - t, p.coords(), t, q.coords()));
    case SpaceKind::Sphere: {
      const double theta = distance(p, q);
      if (theta >= kPi - kAntipodalSlack)
        throw ambiguity_error("sphere points at distance " + std::to_string(theta) +
                              " are (nearly) antipodal: geodesic not unique");
      if (theta < 1e-9) {
        Vec x = lincomb(1.0 - t, p.coords(), t, q.coords());
        renormalize_sphere(x);
        return Point::from_coords(std::move(x));
      }
      const double s = std::sin(theta);
      Vec x = lincomb(std::sin((1.0 - t) * theta) / s, p.coords(), std::sin(t * theta) / s,
                      q.coords());
      renormalize_sphere(x);
      return Point::from_coords(std::move(x));
    }
    case SpaceKind::Hyperbolic: {
      const double theta = distance(p, q);
      if (theta < 1e-9) {
        Vec x = lincomb(1.0 - t, p.coords(), t, q.coords());
        renormalize_hyperboloid(x);
        return Point::from_coords(std::move(x));
      }
      const double s = std::sinh(theta);
      Vec x = lincomb(std::sinh((1.0 - t) * theta) / s, p.coords(), std::sinh(t * theta) / s,
                      q.coords());
      renormalize_hyperboloid(x);
      return Point::from_coords(std::move(x));
    }
    case SpaceKind::Circle: {
      const double delta = wrap_signed(q.angle() - p.angle());
      if (std::abs(delta) >= kPi - kAntipodalSlack)
        throw ambiguity_error("circle angles " + std::to_string(p.angle()) + " and " +
                              std::to_string(q.angle()) +
                              " are (nearly) antipodal: geodesic not unique");
      return Point::from_angle(p.angle() + t * delta);
    }
    case SpaceKind::Tree: {
      const TreePoint r = tree_->interpolate(p.tree(), q.tree(), t);
      return Point::on_edge(r.edge, r.offset);
    }
  }
  return p;
}

Point Space::midpoint(const Point& p, const Point& q) const { return interpolate(p, q, 0.5); }

TangentVector Space::log_map(const Point& base, const Point& target) const {
  validate_point(base);
  validate_point(target);
  switch (kind_) {
    case SpaceKind::Euclidean:
      return TangentVector(base, lincomb(1.0, target.coords(), -1.0, base.coords()));
    case SpaceKind::Sphere: {
      const double theta = distance(base, target);
      if (theta >= kPi - kAntipodalSlack)
        throw ambiguity_error("log map undefined for (nearly) antipodal sphere points");
      const double c = dot(base.coords(), target.coords());
      Vec v = lincomb(1.0, target.coords(), -c, base.coords());
      if (theta >= 1e-9) {
        const double n = norm(v);
        if (n > 0.0) scale(v, theta / n);
      }
      // Exact orthogonality against roundoff.
      const double drift = dot(v, base.coords());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= drift * base.coords()[i];
      return TangentVector(base, std::move(v));
    }
    case SpaceKind::Hyperbolic: {
      const double theta = distance(base, target);
      const double c = -mdot(base.coords(), target.coords());
      Vec v = lincomb(1.0, target.coords(), -c, base.coords());
      if (theta >= 1e-9) {
        const double n = std::sqrt(std::max(0.0, mdot(v, v)));
        if (n > 0.0) scale(v, theta / n);
      }
      const double drift = mdot(v, base.coords());
      // Tangency: <v, base>_M = 0; note <base, base>_M = -1.
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += drift * base.coords()[i];
      return TangentVector(base, std::move(v));
    }
    case SpaceKind::Circle: {
      const double delta = wrap_signed(target.angle() - base.angle());
      if (std::abs(delta) >= kPi - kAntipodalSlack)
        throw ambiguity_error("log map undefined for (nearly) antipodal circle points");
      return TangentVector(base, Vec{delta});
    }
    case SpaceKind::Tree:
      throw unsupported_capability_error(
          "log map is not defined on metric trees; use incident directions");
  }
  return TangentVector(base, Vec{});
}

Point Space::exp_map(const Point& base, const TangentVector& v) const {
  validate_point(base);
  if (kind_ == SpaceKind::Tree)
    throw unsupported_capability_error(
        "exp map is not defined on metric trees; use interpolate along edges");
  if (v.is_tree()) throw invalid_point_error("coordinate space expects component tangent vectors");
  if (!points_equal(v.base(), base))
    throw domain_error("tangent vector is based at a different point");
  const Vec& c = v.components();
  if (c.size() != coordinate_arity())
    throw invalid_point_error("tangent vector arity mismatch");
  switch (kind_) {
    case SpaceKind::Euclidean:
      return Point::from_coords(lincomb(1.0, base.coords(), 1.0, c));
    case SpaceKind::Sphere: {
      if (std::abs(dot(c, base.coords())) > 1e-10)
        throw invalid_point_error("sphere tangent vector is not orthogonal to its base");
      const double r = norm(c);
      if (r == 0.0) return base;
      Vec x = lincomb(std::cos(r), base.coords(), std::sin(r) / r, c);
      renormalize_sphere(x);
      return Point::from_coords(std::move(x));
    }
    case SpaceKind::Hyperbolic: {
      if (std::abs(mdot(c, base.coords())) > 1e-10)
        throw invalid_point_error("hyperbolic tangent vector is not Minkowski-orthogonal");
      const double r = std::sqrt(std::max(0.0, mdot(c, c)));
      if (r == 0.0) return base;
      Vec x = lincomb(std::cosh(r), base.coords(), std::sinh(r) / r, c);
      renormalize_hyperboloid(x);
      return Point::from_coords(std::move(x));
    }
    case SpaceKind::Circle:
      if (c.size() != 1) throw invalid_point_error("circle tangent vector needs one component");
      return Point::from_angle(base.angle() + c[0]);
    default:
      break;
  }
  return base;
}

double Space::tangent_inner(const TangentVector& a, const TangentVector& b) const {
  if (kind_ == SpaceKind::Tree) {
    if (!a.is_tree() || !b.is_tree())
      throw invalid_point_error("tree space expects ray tangent vectors");
    if (!points_equal(a.base(), b.base()))
      throw domain_error("tangent vectors live at different base points");
    const double cosine = a.direction() == b.direction() ? 1.0 : -1.0;
    return a.rate() * b.rate() * cosine;
  }
  if (a.is_tree() || b.is_tree())
    throw invalid_point_error("coordinate space expects component tangent vectors");
  if (!points_equal(a.base(), b.base()))
    throw domain_error("tangent vectors live at different base points");
  if (kind_ == SpaceKind::Hyperbolic) return mdot(a.components(), b.components());
  return dot(a.components(), b.components());
}

double Space::tangent_norm(const TangentVector& v) const {
  if (kind_ == SpaceKind::Tree) return std::abs(v.rate());
  if (kind_ == SpaceKind::Hyperbolic)
    return std::sqrt(std::max(0.0, mdot(v.components(), v.components())));
  return norm(v.components());
}

Point Space::random_point(Xorshift64Star& rng) const {
  switch (kind_) {
    case SpaceKind::Euclidean: {
      Vec x(coordinate_arity());
      for (double& c : x) c = rng.normal();
      return Point::from_coords(std::move(x));
    }
    case SpaceKind::Sphere: {
      Vec x(coordinate_arity());
      double n = 0.0;
      while (n < 1e-12) {
        for (double& c : x) c = rng.normal();
        n = norm(x);
      }
      scale(x, 1.0 / n);
      return Point::from_coords(std::move(x));
    }
    case SpaceKind::Hyperbolic: {
      Vec x(coordinate_arity());
      double s = 0.0;
      for (std::size_t i = 1; i < x.size(); ++i) {
        x[i] = 0.5 * rng.normal();
        s += x[i] * x[i];
      }
      x[0] = std::sqrt(1.0 + s);
      return Point::from_coords(std::move(x));
    }
    case SpaceKind::Circle:
      return Point::from_angle(rng.uniform(0.0, kTwoPi));
    case SpaceKind::Tree: {
      const auto& edges = tree_->edges();
      const int k = rng.uniform_int(0, static_cast<int>(edges.size()) - 1);
      return Point::on_edge(k, rng.uniform(0.0, edges[k].length));
    }
  }
  return Point{};
}

// ---------------------------------------------------------------------------
// Weighted centers of gravity.

namespace {

// F(x) = sum_j w_j^2 d^2(x, p_j)
double mean_objective(const Space& s, const Point& x, std::span<const Point> pts,
                      std::span<const double> w2) {
  double f = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const double d = s.distance(x, pts[j]);
    f += w2[j] * d * d;
  }
  return f;
}

// Worst one-sided derivative violation of F/(2W) at x over the rays
// leaving x; the tree analogue of the gradient-norm residual.
double tree_mean_residual(const Space& s, const TreePoint& x, std::span<const Point> pts,
                          std::span<const double> w2, double total_w2) {
  const TreeStructure& tree = s.tree_structure();
  double worst = 0.0;
  for (const TreeDirection& dir : tree.directions_at(x)) {
    double derivative = 0.0;  // of F/2 along the unit ray
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const TreePoint& pj = pts[j].tree();
      const double d = tree.distance(x, pj);
      if (d == 0.0) continue;
      const auto toward = tree.direction_toward(x, pj);
      const double sign = (toward && *toward == dir) ? -1.0 : 1.0;
      derivative += w2[j] * d * sign;
    }
    worst = std::max(worst, -derivative / total_w2);
  }
  return worst;
}

Point tree_mean(const Space& s, std::span<const Point> pts, std::span<const double> w2,
                double total_w2, const MeanOptions& opt) {
  const TreeStructure& tree = s.tree_structure();

  // Inductive-mean warm start: cyclic geodesic interpolation with
  // decreasing steps. The exact per-edge search below does not depend on
  // it, but it gives the solver a sensible iterate to report on failure.
  Point x = opt.hint.value_or(pts[0]);
  double acc = 0.0;
  for (int pass = 0; pass < 3; ++pass) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      acc += w2[j];
      x = s.interpolate(x, pts[j], w2[j] / acc);
    }
  }

  // F restricted to an edge is strictly convex piecewise quadratic, with
  // breakpoints only at input points lying on that edge. Each piece has
  //   d_j(t) = c_j + s_j t  (s_j = +-1),
  // so its minimizer is closed form; scanning every piece of every edge
  // yields the global minimizer to machine precision. (A value-based
  // line search cannot reach the 1e-10 first-order residual target:
  // objective differences flatten out at sqrt(eps).)
  double best_f = std::numeric_limits<double>::infinity();
  TreePoint best{0, 0.0};
  for (int k = 0; k < static_cast<int>(tree.edges().size()); ++k) {
    const auto& edge = tree.edges()[k];
    const double len = edge.length;

    std::vector<double> breaks{0.0, len};
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const TreePoint& pj = pts[j].tree();
      if (pj.edge == k && pj.offset > 0.0 && pj.offset < len) breaks.push_back(pj.offset);
    }
    std::sort(breaks.begin(), breaks.end());

    for (std::size_t piece = 0; piece + 1 < breaks.size(); ++piece) {
      const double lo = breaks[piece];
      const double hi = breaks[piece + 1];
      if (!(hi > lo)) continue;
      const double mid = 0.5 * (lo + hi);
      double slope_sum = 0.0;  // sum of w^2 s_j c_j
      for (std::size_t j = 0; j < pts.size(); ++j) {
        const TreePoint& pj = pts[j].tree();
        double c, sgn;
        if (pj.edge == k) {
          if (pj.offset > mid) {  // piece left of the point
            c = pj.offset;
            sgn = -1.0;
          } else {
            c = -pj.offset;
            sgn = 1.0;
          }
        } else {
          const double du = tree.distance(TreePoint{k, 0.0}, pj);
          const double dv = tree.distance(TreePoint{k, len}, pj);
          if (du < dv) {  // reached through the u endpoint: d = du + t
            c = du;
            sgn = 1.0;
          } else {  // through v: d = (len + dv) - t
            c = len + dv;
            sgn = -1.0;
          }
        }
        slope_sum += w2[j] * sgn * c;
      }
      const double t = std::clamp(-slope_sum / total_w2, lo, hi);
      const double f = mean_objective(s, Point::on_edge(k, t), pts, w2);
      if (f < best_f) {
        best_f = f;
        best = TreePoint{k, t};
      }
    }
  }
  if (best.offset < 1e-12 * std::max(1.0, tree.edges()[best.edge].length)) best.offset = 0.0;
  const double best_len = tree.edges()[best.edge].length;
  if (best_len - best.offset < 1e-12 * std::max(1.0, best_len)) best.offset = best_len;

  const double residual = tree_mean_residual(s, best, pts, w2, total_w2);
  if (residual >= std::max(opt.tolerance, 1e-9)) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "tree center of gravity residual %.3e above tolerance",
                  residual);
    throw convergence_error(msg, Point::on_edge(best.edge, best.offset), residual);
  }
  const TreePoint c = tree.canonical(best);
  return Point::on_edge(c.edge, c.offset);
}

bool within_ball(const Space& s, const Point& witness, std::span<const Point> pts, double radius) {
  for (const Point& p : pts)
    if (s.distance(witness, p) > radius) return false;
  return true;
}

Point karcher_mean(const Space& s, std::span<const Point> pts, std::span<const double> w2,
                   double total_w2, const MeanOptions& opt) {
  // Uniqueness precondition: the inputs must fit in a ball of radius
  // c(N) around some point. Cheap witnesses are tried first; if none
  // certifies the ball, the solver still runs and the result itself is
  // used as the final witness.
  const double c = s.convexity_radius();
  bool certified = !std::isfinite(c);
  if (!certified) {
    const double slack = c * (1.0 + 1e-9) + 1e-12;
    if (opt.hint && within_ball(s, *opt.hint, pts, slack)) certified = true;
    if (!certified)
      for (const Point& p : pts)
        if (within_ball(s, p, pts, slack)) {
          certified = true;
          break;
        }
  }

  Point x = opt.hint.value_or(pts[0]);
  s.validate_point(x);
  Point best = x;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opt.max_iterations; ++it) {
    Vec step(s.coordinate_arity(), 0.0);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const TangentVector lg = s.log_map(x, pts[j]);
      const Vec& comp = lg.components();
      for (std::size_t i = 0; i < step.size(); ++i) step[i] += w2[j] * comp[i];
    }
    for (double& v : step) v /= total_w2;
    const double residual = s.tangent_norm(TangentVector(x, step));
    if (residual < best_residual) {
      best_residual = residual;
      best = x;
    }
    if (residual < opt.tolerance) {
      if (!certified) {
        const double slack = c * (1.0 + 1e-9) + 1e-12;
        if (!within_ball(s, x, pts, slack))
          throw ambiguity_error(
              "center of gravity inputs do not fit a convexity ball (radius " +
              std::to_string(c) + "): result not certifiably unique");
      }
      return x;
    }
    x = s.exp_map(x, TangentVector(x, std::move(step)));
  }
  throw convergence_error("center of gravity did not reach tolerance " +
                              std::to_string(opt.tolerance) + " within " +
                              std::to_string(opt.max_iterations) + " iterations",
                          best, best_residual);
}

}  // namespace

Point Space::weighted_center_of_gravity(std::span<const Point> points,
                                        std::span<const double> weights,
                                        const MeanOptions& options) const {
  if (points.empty()) throw domain_error("center of gravity of an empty point set");
  if (points.size() != weights.size())
    throw domain_error("center of gravity needs one weight per point (" +
                       std::to_string(points.size()) + " points, " +
                       std::to_string(weights.size()) + " weights)");
  std::vector<double> w2(weights.size());
  double total = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (!(weights[j] > 0.0) || !std::isfinite(weights[j]))
      throw domain_error("center of gravity weights must be positive");
    w2[j] = weights[j] * weights[j];
    total += w2[j];
  }
  for (const Point& p : points) validate_point(p);

  if (points.size() == 1) return points[0];
  if (points.size() == 2) {
    // Exact: the minimizer sits on the connecting geodesic at parameter
    // w2/(w1+w2); interpolate enforces the unique-midpoint regime.
    return interpolate(points[0], points[1], w2[1] / total);
  }

  switch (kind_) {
    case SpaceKind::Euclidean: {
      Vec x(coordinate_arity(), 0.0);
      for (std::size_t j = 0; j < points.size(); ++j)
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += w2[j] * points[j].coords()[i];
      for (double& v : x) v /= total;
      return Point::from_coords(std::move(x));
    }
    case SpaceKind::Tree:
      return tree_mean(*this, points, w2, total, options);
    default:
      return karcher_mean(*this, points, w2, total, options);
  }
}

}  // namespace hnet
