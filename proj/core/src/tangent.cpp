#include "hnet/tangent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hnet {

namespace {

constexpr double kDegenerate = 1e-15;

}

double angle_between(const Space& s, const TangentVector& a, const TangentVector& b) {
  if (s.kind() == SpaceKind::Tree) {
    if (!a.is_tree() || !b.is_tree())
      throw invalid_point_error("tree space expects ray tangent vectors");
    if (!s.points_equal(a.base(), b.base()))
      throw domain_error("directions live at different base points");
    if (std::abs(a.rate()) < kDegenerate || std::abs(b.rate()) < kDegenerate)
      throw domain_error("angle with a zero direction is undefined");
    // Two rays at a tree point either coincide or meet at angle pi; a
    // negative rate walks the opposite way along the named edge.
    TreeDirection da = a.direction();
    if (a.rate() < 0.0) da.toward_v = !da.toward_v;
    TreeDirection db = b.direction();
    if (b.rate() < 0.0) db.toward_v = !db.toward_v;
    return da == db ? 0.0 : std::numbers::pi;
  }
  const double na = s.tangent_norm(a);
  const double nb = s.tangent_norm(b);
  if (na < kDegenerate || nb < kDegenerate)
    throw domain_error("angle with a zero direction is undefined");
  const double c = std::clamp(s.tangent_inner(a, b) / (na * nb), -1.0, 1.0);
  return std::acos(c);
}

double angle(const Space& s, const Point& base, const Point& q, const Point& r) {
  if (s.kind() == SpaceKind::Tree)
    throw unsupported_capability_error(
        "angles on trees are enumerated through incident directions");
  const TangentVector u = s.log_map(base, q);
  const TangentVector v = s.log_map(base, r);
  return angle_between(s, u, v);
}

double cone_distance(const Space& s, const ConePoint& a, const ConePoint& b) {
  if (a.radius < 0.0 || b.radius < 0.0) throw domain_error("cone radius must be nonnegative");
  // Apex identification: radius-zero elements are the origin.
  if (a.radius == 0.0) return b.radius;
  if (b.radius == 0.0) return a.radius;
  if (!s.points_equal(a.direction.base(), b.direction.base()))
    throw domain_error("cone points live in tangent cones at different base points");
  const double theta = angle_between(s, a.direction, b.direction);
  if (theta >= std::numbers::pi)
    return a.radius + b.radius;
  const double sq = a.radius * a.radius + b.radius * b.radius -
                    2.0 * a.radius * b.radius * std::cos(theta);
  return std::sqrt(std::max(0.0, sq));
}

double criticality_residual(const NetMap& f, int i) {
  const Space& s = f.space();
  if (!s.smooth())
    throw unsupported_capability_error(
        "criticality residual needs log maps; use the variational check on trees");
  const auto& nbrs = f.graph().neighbors(i);
  if (nbrs.empty()) return 0.0;
  std::vector<double> sum(s.coordinate_arity(), 0.0);
  double total_w2 = 0.0;
  for (const auto& [j, w] : nbrs) {
    const TangentVector lg = s.log_map(f.image(i), f.image(j));
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += w * w * lg.components()[k];
    total_w2 += w * w;
  }
  return s.tangent_norm(TangentVector(f.image(i), std::move(sum))) / total_w2;
}

double variational_inequality_check(const NetMap& f, int i,
                                    std::span<const TangentVector> directions) {
  if (directions.empty()) throw domain_error("variational check needs at least one direction");
  const Space& s = f.space();
  const auto& nbrs = f.graph().neighbors(i);
  double worst = -std::numeric_limits<double>::infinity();
  for (const TangentVector& v : directions) {
    if (!s.points_equal(v.base(), f.image(i)))
      throw domain_error("direction is not based at the vertex image");
    double total = 0.0;
    for (const auto& [j, w] : nbrs) {
      if (s.kind() == SpaceKind::Tree) {
        const TreeStructure& tree = s.tree_structure();
        const TreePoint& x = f.image(i).tree();
        const TreePoint& pj = f.image(j).tree();
        const double d = tree.distance(x, pj);
        if (d == 0.0) continue;
        const auto toward = tree.direction_toward(x, pj);
        const double cosine = (toward && *toward == v.direction()) ? 1.0 : -1.0;
        total += w * w * v.rate() * d * cosine;
      } else {
        total += w * w * s.tangent_inner(v, s.log_map(f.image(i), f.image(j)));
      }
    }
    worst = std::max(worst, total);
  }
  return worst;
}

std::vector<TangentVector> incident_directions(const Space& s, const Point& p) {
  if (s.kind() != SpaceKind::Tree)
    throw unsupported_capability_error(
        "incident direction enumeration is only finite on metric trees");
  s.validate_point(p);
  std::vector<TangentVector> out;
  for (const TreeDirection& d : s.tree_structure().directions_at(p.tree()))
    out.emplace_back(p, d, 1.0);
  return out;
}

}  // namespace hnet
