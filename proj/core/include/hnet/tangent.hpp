#pragma once

#include <span>
#include <vector>

#include "hnet/net.hpp"
#include "hnet/space.hpp"

namespace hnet {

/// Point of the tangent cone at a base point: a direction plus a radius.
/// Radius-zero points are the cone apex and compare equal regardless of
/// direction.
struct ConePoint {
  TangentVector direction;
  double radius = 0.0;
};

/// Angle in [0, pi] subtended at `base` by q and r, computed through the
/// log map (smooth spaces only).
double angle(const Space& s, const Point& base, const Point& q, const Point& r);

/// Angle between two tangent vectors at the same base point. On trees
/// distinct rays meet at angle pi.
double angle_between(const Space& s, const TangentVector& a, const TangentVector& b);

/// Cone metric: law of cosines for angles below pi, radius sum beyond.
double cone_distance(const Space& s, const ConePoint& a, const ConePoint& b);

/// || sum_j w^2(i,j) log_{f(i)} f(j) || / w(i) with w(i) = sum_j w^2(i,j);
/// vanishes exactly at harmonic vertices. Smooth spaces only.
double criticality_residual(const NetMap& f, int i);

/// Max over the supplied directions V of
///   sum_j w^2(i,j) <V, log/projection of f(j)>,
/// which is <= 0 at harmonic vertices. For trees pass the incident rays
/// (the one-sided first-variation test).
double variational_inequality_check(const NetMap& f, int i,
                                    std::span<const TangentVector> directions);

/// Unit rays leaving a tree point; the only direction enumeration with a
/// finite exact answer. Throws unsupported_capability_error elsewhere.
std::vector<TangentVector> incident_directions(const Space& s, const Point& p);

}  // namespace hnet
