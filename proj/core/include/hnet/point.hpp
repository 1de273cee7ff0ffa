#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "hnet/errors.hpp"

namespace hnet {

/// Location on a metric tree: an edge index plus an arclength offset
/// measured from the edge's first endpoint.
struct TreePoint {
  int edge = 0;
  double offset = 0.0;
};

/// A point of one of the model geometries. Vector-like geometries
/// (euclidean, sphere, hyperbolic, circle) store coordinates; metric
/// trees store an edge/offset pair. Interpretation of the coordinates
/// is up to the Space the point is used with.
class Point {
 public:
  Point() = default;

  static Point from_coords(std::vector<double> coords);
  /// Circle point; the angle is reduced to [0, 2*pi) on construction.
  static Point from_angle(double theta);
  static Point on_edge(int edge, double offset);

  bool is_tree() const { return std::holds_alternative<TreePoint>(rep_); }
  const std::vector<double>& coords() const;
  const TreePoint& tree() const;
  /// Circle convenience accessor: the single stored coordinate.
  double angle() const;

 private:
  std::variant<std::vector<double>, TreePoint> rep_ = std::vector<double>{};
};

/// Ray at a tree point: along `edge`, either toward the edge's second
/// endpoint (toward_v) or back toward the first.
struct TreeDirection {
  int edge = 0;
  bool toward_v = true;
};

inline bool operator==(const TreeDirection& a, const TreeDirection& b) {
  return a.edge == b.edge && a.toward_v == b.toward_v;
}

/// Tangent vector at a base point. Smooth geometries store ambient
/// components; on trees a vector is a signed rate along an incident ray.
class TangentVector {
 public:
  TangentVector() = default;
  TangentVector(Point base, std::vector<double> components);
  TangentVector(Point base, TreeDirection direction, double rate);

  const Point& base() const { return base_; }
  bool is_tree() const { return std::holds_alternative<TreeRay>(rep_); }
  const std::vector<double>& components() const;
  const TreeDirection& direction() const;
  double rate() const;

 private:
  struct TreeRay {
    TreeDirection dir;
    double rate = 0.0;
  };
  Point base_;
  std::variant<std::vector<double>, TreeRay> rep_ = std::vector<double>{};
};

}  // namespace hnet
