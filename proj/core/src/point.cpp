#include "hnet/point.hpp"

#include <cmath>
#include <utility>

namespace hnet {

namespace {

double wrap_angle(double theta) {
  const double two_pi = 6.283185307179586476925286766559;
  double w = std::fmod(theta, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

}  // namespace

Point Point::from_coords(std::vector<double> coords) {
  Point p;
  p.rep_ = std::move(coords);
  return p;
}

Point Point::from_angle(double theta) {
  if (!std::isfinite(theta)) throw invalid_point_error("circle angle is not finite");
  return from_coords({wrap_angle(theta)});
}

Point Point::on_edge(int edge, double offset) {
  Point p;
  p.rep_ = TreePoint{edge, offset};
  return p;
}

const std::vector<double>& Point::coords() const {
  if (is_tree()) throw invalid_point_error("tree point has no coordinate representation");
  return std::get<std::vector<double>>(rep_);
}

const TreePoint& Point::tree() const {
  if (!is_tree()) throw invalid_point_error("coordinate point has no tree representation");
  return std::get<TreePoint>(rep_);
}

double Point::angle() const {
  const auto& c = coords();
  if (c.size() != 1) throw invalid_point_error("angle() requires a single stored coordinate");
  return c[0];
}

TangentVector::TangentVector(Point base, std::vector<double> components)
    : base_(std::move(base)), rep_(std::move(components)) {}

TangentVector::TangentVector(Point base, TreeDirection direction, double rate)
    : base_(std::move(base)), rep_(TreeRay{direction, rate}) {}

const std::vector<double>& TangentVector::components() const {
  if (is_tree()) throw invalid_point_error("tree tangent vector has no components");
  return std::get<std::vector<double>>(rep_);
}

const TreeDirection& TangentVector::direction() const {
  if (!is_tree()) throw invalid_point_error("coordinate tangent vector has no tree direction");
  return std::get<TreeRay>(rep_).dir;
}

double TangentVector::rate() const {
  if (!is_tree()) throw invalid_point_error("coordinate tangent vector has no tree rate");
  return std::get<TreeRay>(rep_).rate;
}

}  // namespace hnet
