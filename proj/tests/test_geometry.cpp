#include <cmath>

#include "doctest.h"

#include "cflow/geometry.hpp"

using namespace cflow;

TEST_CASE("cross2 and rot90") {
  const Vec2 ex(1, 0), ey(0, 1);
  CHECK(cross2(ex, ey) == 1.0);
  CHECK(cross2(ey, ex) == -1.0);
  CHECK((rot90(ex) - ey).norm() == 0.0);
  CHECK((rot90(ey) + ex).norm() == 0.0);
}

TEST_CASE("menger curvature is exact on circles") {
  const double r = 0.37;
  for (double base : {0.0, 1.1, 3.0}) {
    const auto at = [&](double th) {
      return Vec2(2.0 + r * std::cos(th), -1.0 + r * std::sin(th));
    };
    // CCW sample: positive curvature 1/r regardless of spacing
    const double k = menger_curvature(at(base), at(base + 0.4),
                                      at(base + 0.9));
    CHECK(k == doctest::Approx(1.0 / r).epsilon(1e-13));
  }
  // clockwise order flips the sign
  const Vec2 a(1, 0), b(0, 1), c(-1, 0);
  CHECK(menger_curvature(a, b, c) == doctest::Approx(1.0));
  CHECK(menger_curvature(c, b, a) == doctest::Approx(-1.0));
}

TEST_CASE("menger curvature vanishes on collinear points") {
  const Vec2 a(0, 0), b(1, 1), c(2.5, 2.5);
  CHECK(menger_curvature(a, b, c) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("shoelace area signs") {
  std::vector<Vec2> sq = {Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)};
  CHECK(shoelace_area(sq) == doctest::Approx(1.0));
  std::reverse(sq.begin(), sq.end());
  CHECK(shoelace_area(sq) == doctest::Approx(-1.0));
}

TEST_CASE("wrap helpers") {
  CHECK(wrap_coord(3.2, 3.0) == doctest::Approx(0.2));
  CHECK(wrap_coord(-0.1, 3.0) == doctest::Approx(2.9));
  CHECK(wrap_delta(2.9, 3.0) == doctest::Approx(-0.1));
  CHECK(wrap_delta(-1.6, 3.0) == doctest::Approx(1.4));
  CHECK(wrap_delta(1.5, 3.0) == doctest::Approx(-1.5));  // half-open at +L/2
}

TEST_CASE("segment crossing is strict") {
  const Vec2 a(0, 0), b(1, 1), c(0, 1), d(1, 0);
  CHECK(segments_cross(a, b, c, d));
  // sharing an endpoint is not a crossing
  CHECK_FALSE(segments_cross(a, b, b, d));
  // parallel disjoint
  CHECK_FALSE(segments_cross(a, Vec2(1, 0), Vec2(0, 1), Vec2(1, 1)));
  // collinear overlap does not count as a proper crossing
  CHECK_FALSE(segments_cross(a, Vec2(2, 0), Vec2(1, 0), Vec2(3, 0)));
}

TEST_CASE("turning angle sign and magnitude") {
  CHECK(turning_angle(Vec2(0, 0), Vec2(1, 0), Vec2(1, 1)) ==
        doctest::Approx(M_PI / 2));
  CHECK(turning_angle(Vec2(0, 0), Vec2(1, 0), Vec2(1, -1)) ==
        doctest::Approx(-M_PI / 2));
  CHECK(turning_angle(Vec2(0, 0), Vec2(1, 0), Vec2(2, 0)) ==
        doctest::Approx(0.0));
}
