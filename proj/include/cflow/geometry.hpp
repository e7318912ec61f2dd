#pragma once

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "cflow/types.hpp"

// Planar kernels shared by every chart-based computation. All angles are in
// radians, all curvatures are signed with the counterclockwise circle
// positive.

namespace cflow {

template <typename A, typename B>
auto cross2(const Eigen::MatrixBase<A>& u, const Eigen::MatrixBase<B>& v) {
  return u.x() * v.y() - u.y() * v.x();
}

template <typename A>
Vec2T<typename A::Scalar> rot90(const Eigen::MatrixBase<A>& v) {
  return Vec2T<typename A::Scalar>(-v.y(), v.x());
}

// Signed Menger curvature of the circle through three points, zero when
// collinear. Exact for any three points sampled from a circle.
template <typename A, typename B, typename C>
auto menger_curvature(const Eigen::MatrixBase<A>& a,
                      const Eigen::MatrixBase<B>& b,
                      const Eigen::MatrixBase<C>& c) {
  using S = typename A::Scalar;
  const Vec2T<S> ab = b - a;
  const Vec2T<S> bc = c - b;
  const Vec2T<S> ac = c - a;
  const S denom = ab.norm() * bc.norm() * ac.norm();
  if (denom == S(0)) return S(0);
  return S(2) * cross2(ab, bc) / denom;
}

// Signed polygon area, positive for counterclockwise order.
template <typename S>
S shoelace_area(const std::vector<Vec2T<S>>& pts) {
  const std::size_t n = pts.size();
  S acc = S(0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % n];
    acc += cross2(p, q);
  }
  return acc / S(2);
}

// Shortest representative of d modulo period, in [-period/2, period/2).
template <typename S>
S wrap_delta(S d, S period) {
  S w = std::fmod(d, period);
  if (w < -period / S(2)) w += period;
  if (w >= period / S(2)) w -= period;
  return w;
}

// Value wrapped into [0, period).
template <typename S>
S wrap_coord(S x, S period) {
  S w = std::fmod(x, period);
  if (w < S(0)) w += period;
  return w;
}

// Proper crossing test: the open segments (p1,p2) and (q1,q2) meet in a
// single interior point. Touching at endpoints or collinear overlap does not
// count; the caller decides how to treat those.
template <typename S>
bool segments_cross(const Vec2T<S>& p1, const Vec2T<S>& p2,
                    const Vec2T<S>& q1, const Vec2T<S>& q2) {
  const S d1 = cross2(Vec2T<S>(p2 - p1), Vec2T<S>(q1 - p1));
  const S d2 = cross2(Vec2T<S>(p2 - p1), Vec2T<S>(q2 - p1));
  const S d3 = cross2(Vec2T<S>(q2 - q1), Vec2T<S>(p1 - q1));
  const S d4 = cross2(Vec2T<S>(q2 - q1), Vec2T<S>(p2 - q1));
  return ((d1 > S(0) && d2 < S(0)) || (d1 < S(0) && d2 > S(0))) &&
         ((d3 > S(0) && d4 < S(0)) || (d3 < S(0) && d4 > S(0)));
}

// Turning angle at b, in (-pi, pi], positive for a left turn.
template <typename S>
S turning_angle(const Vec2T<S>& a, const Vec2T<S>& b, const Vec2T<S>& c) {
  const Vec2T<S> u = b - a;
  const Vec2T<S> v = c - b;
  return std::atan2(cross2(u, v), u.dot(v));
}

}  // namespace cflow
