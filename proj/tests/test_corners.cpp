#include <cmath>
#include <random>

#include "doctest.h"

#include "cflow/corners.hpp"
#include "cflow/functional.hpp"
#include "cflow/oracle.hpp"
#include "support.hpp"

using namespace cflow;
using namespace cflow::testing;

namespace {

std::vector<Vec3> ray_points(const Vec2& dir, double len, int n) {
  std::vector<Vec3> out;
  for (int i = 0; i <= n; ++i) {
    const Vec2 p = (len * i / n) * dir.normalized();
    out.emplace_back(p.x(), p.y(), 0);
  }
  return out;
}

// straight-wedge continuum values for interior angle theta
double wedge_dl(double theta, double eps) {
  return eps * ((M_PI - theta) - 2 / std::tan(theta / 2));
}
double wedge_da(double theta, double eps) {
  return -eps * eps * (1 / std::tan(theta / 2) - (M_PI - theta) / 2);
}

}  // namespace

TEST_CASE("tangent circle of a right-angle wedge") {
  const ChartFrame chart = exp_chart(Surface::plane(), Vec3(0, 0, 0), 1.0);
  const auto arc1 = ray_points(Vec2(1, 0), 0.8, 40);
  const auto arc2 = ray_points(Vec2(0, 1), 0.8, 40);
  const TangentCircle tc = tangent_circle(arc1, arc2, 0.1, chart);
  CHECK((tc.p_eps - Vec3(0.1, 0.1, 0)).norm() <= 1e-9);
  CHECK((tc.x_eps - Vec3(0.1, 0, 0)).norm() <= 1e-9);
  CHECK((tc.y_eps - Vec3(0, 0.1, 0)).norm() <= 1e-9);
  // equidistance from both sides
  CHECK((tc.p_eps - tc.x_eps).norm() == doctest::Approx(0.1).epsilon(1e-10));
  CHECK((tc.p_eps - tc.y_eps).norm() == doctest::Approx(0.1).epsilon(1e-10));
}

TEST_CASE("right-angle wedge rounding matches the sliver formulas") {
  const ChartFrame chart = exp_chart(Surface::plane(), Vec3(0, 0, 0), 1.0);
  const auto arc1 = ray_points(Vec2(1, 0), 0.8, 40);
  const auto arc2 = ray_points(Vec2(0, 1), 0.8, 40);
  const double eps = 0.1, c = 1.0;
  const WedgeRounding rep = round_wedge(arc1, arc2, eps, c, chart);
  CHECK(rep.delta_length ==
        doctest::Approx(wedge_dl(M_PI / 2, eps)).epsilon(2e-2));
  CHECK(rep.delta_area ==
        doctest::Approx(wedge_da(M_PI / 2, eps)).epsilon(2e-2));
  CHECK(rep.delta_fc < 0);
  CHECK(rep.delta_fc ==
        doctest::Approx(wedge_dl(M_PI / 2, eps) - c * wedge_da(M_PI / 2, eps))
            .epsilon(2e-2));
  CHECK(rep.arc_k_min >= 1 / (2 * eps));
  CHECK(rep.arc_k_max <= 2 / eps);
}

TEST_CASE("randomized wedges always certify a decrease") {
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> theta_d(0.5, 2.4);
  std::uniform_real_distribution<double> eps_d(0.02, 0.08);
  std::uniform_real_distribution<double> base_d(0, 2 * M_PI);
  const ChartFrame chart = exp_chart(Surface::plane(), Vec3(0, 0, 0), 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double theta = theta_d(rng);
    const double eps = eps_d(rng);
    const double base = base_d(rng);
    const double c = trial % 2 == 0 ? 0.5 : 1.5;
    const Vec2 d1(std::cos(base), std::sin(base));
    const Vec2 d2(std::cos(base + theta), std::sin(base + theta));
    const WedgeRounding rep =
        round_wedge(ray_points(d1, 0.8, 40), ray_points(d2, 0.8, 40), eps, c,
                    chart);
    CHECK(rep.delta_fc < 0);
    CHECK(rep.delta_fc ==
          doctest::Approx(wedge_dl(theta, eps) - c * wedge_da(theta, eps))
              .epsilon(3e-2));
    CHECK(rep.arc_k_min >= 1 / (2 * eps));
    CHECK(rep.arc_k_max <= 2 / eps);
  }
}

TEST_CASE("near-straight wedges are refused") {
  const ChartFrame chart = exp_chart(Surface::plane(), Vec3(0, 0, 0), 1.0);
  const auto arc1 = ray_points(Vec2(1, 0.01), 0.8, 40);
  const auto arc2 = ray_points(Vec2(-1, 0.01), 0.8, 40);
  try {
    round_wedge(arc1, arc2, 0.05, 1.0, chart);
    CHECK(false);
  } catch (const GeometryError& e) {
    CHECK(e.code() == errc::angle_too_large);
  }
}

TEST_CASE("square corner rounding, frozen reference") {
  const DiscreteCurve sq = square(1.0, 128);
  const CorneredCurve cc = detect_corners(sq);
  REQUIRE(cc.corners.size() == 4);
  const auto [rounded, rep] = round_corner(cc, 0, 0.1, 1.0);
  CHECK(rep.delta_fc == doctest::Approx(-0.04080665).epsilon(1e-5));
  CHECK(rep.delta_length == doctest::Approx(-0.04296074).epsilon(1e-5));
  CHECK(rep.delta_area == doctest::Approx(-0.00215409).epsilon(1e-4));
  // continuum sliver values are recovered to a few parts in a thousand
  CHECK(rep.delta_fc ==
        doctest::Approx(wedge_dl(M_PI / 2, 0.1) - wedge_da(M_PI / 2, 0.1))
            .epsilon(2e-3));
  CHECK(rep.arc_k_min == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(rep.arc_k_max == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(detect_corners(rounded).corners.size() == 3);
  CHECK(self_intersects(rounded) == false);
}

TEST_CASE("smaller epsilon nests inside larger epsilon") {
  const DiscreteCurve sq = square(1.0, 128);
  const CorneredCurve cc = detect_corners(sq);
  const auto [r10, w10] = round_corner(cc, 0, 0.1, 1.0);
  const auto [r05, w05] = round_corner(cc, 0, 0.05, 1.0);
  const auto [r025, w025] = round_corner(cc, 0, 0.025, 1.0);

  // deeper cuts give larger decreases, and all are negative
  CHECK(w10.delta_fc < w05.delta_fc);
  CHECK(w05.delta_fc < w025.delta_fc);
  CHECK(w025.delta_fc < 0);

  // interior arc points of the big rounding lie inside every smaller one
  for (size_t i = 2; i + 2 < w10.inserted_arc.size(); ++i) {
    CHECK(point_in_region(sq, w10.inserted_arc[i]));
    CHECK(point_in_region(r05, w10.inserted_arc[i]));
    CHECK(point_in_region(r025, w10.inserted_arc[i]));
  }
  // but not conversely: the small arc's midpoint is outside the big region,
  // and the original corner is outside every rounded region
  const Vec3 mid05 = w05.inserted_arc[w05.inserted_arc.size() / 2];
  CHECK_FALSE(point_in_region(r10, mid05));
  CHECK_FALSE(point_in_region(r10, cc.corners[0].point));
  CHECK_FALSE(point_in_region(r05, cc.corners[0].point));

  // Hausdorff deviation scales like the cut depth and stays below 2 eps
  const double h10 = hausdorff_distance(sq, r10);
  const double h05 = hausdorff_distance(sq, r05);
  const double h025 = hausdorff_distance(sq, r025);
  CHECK(h10 == doctest::Approx((std::sqrt(2.0) - 1) * 0.1).epsilon(5e-2));
  CHECK(h10 <= 2 * 0.1);
  CHECK(h05 <= 2 * 0.05);
  CHECK(h025 <= 2 * 0.025);
  CHECK(h05 < h10);
  CHECK(h025 < h05);
}

TEST_CASE("oversize epsilon is refused") {
  const DiscreteCurve sq = square(1.0, 16);
  const CorneredCurve cc = detect_corners(sq);
  // tangency would land past the far end of the adjacent sides
  try {
    round_corner(cc, 0, 0.95, 1.0);
    CHECK(false);
  } catch (const GeometryError& e) {
    CHECK(e.code() == errc::epsilon_too_large);
  }
  CHECK_THROWS_AS(round_corner(cc, 7, 0.1, 1.0), GeometryError);
}

TEST_CASE("rounding direction must face the wedge") {
  const DiscreteCurve sq = square(1.0, 64);
  const CorneredCurve cc = detect_corners(sq);
  try {
    round_corner(cc, 0, 0.1, 1.0, RoundDirection::Outward);
    CHECK(false);
  } catch (const GeometryError& e) {
    CHECK(e.code() == errc::angle_too_large);
  }
}

TEST_CASE("outward rounding of a reflex corner") {
  // L-shaped region, reflex vertex at (1,1)
  const Surface plane = Surface::plane();
  std::vector<Vec3> pts;
  auto edge = [&](Vec2 a, Vec2 b, int n) {
    for (int i = 0; i < n; ++i) {
      const Vec2 p = a + (b - a) * (static_cast<double>(i) / n);
      pts.emplace_back(p.x(), p.y(), 0);
    }
  };
  // spacing 1/64 keeps the inserted arc chords below the corner-detection
  // threshold when the rounding radius is 0.1
  edge({0, 0}, {2, 0}, 128);
  edge({2, 0}, {2, 1}, 64);
  edge({2, 1}, {1, 1}, 64);
  edge({1, 1}, {1, 2}, 64);
  edge({1, 2}, {0, 2}, 64);
  edge({0, 2}, {0, 0}, 128);
  const DiscreteCurve ell(plane, pts);
  const CorneredCurve cc = detect_corners(ell);
  REQUIRE(cc.corners.size() == 6);
  int reflex = -1;
  for (size_t i = 0; i < cc.corners.size(); ++i)
    if (cc.corners[i].passes[0].turning < 0) reflex = static_cast<int>(i);
  REQUIRE(reflex >= 0);
  // inward rounding cannot act on a reflex corner
  CHECK_THROWS_AS(round_corner(cc, reflex, 0.1, 1.0), GeometryError);
  const auto [rounded, rep] =
      round_corner(cc, reflex, 0.1, 1.0, RoundDirection::Outward);
  CHECK(rep.delta_fc < 0);
  CHECK(rep.delta_length < 0);   // the outward arc shortcuts the wedge
  CHECK(rep.delta_area > 0);     // and the region gains the sliver
  CHECK(detect_corners(rounded).corners.size() == 5);
}

TEST_CASE("lens corner rounds into a smooth curve") {
  const Surface torus = Surface::torus(3.0, 1.0);
  const LensCurve lens = lens_curve(torus, 1.0, 4096);
  const CorneredCurve cc = detect_corners(lens.curve);
  REQUIRE(cc.corners.size() == 1);
  REQUIRE(cc.corners[0].passes.size() == 2);
  CHECK(cc.corners[0].tangent_line_count == 2);
  const auto [rounded, rep] = round_corner(cc, 0, 0.01, 1.0);
  CHECK(rep.delta_fc == doctest::Approx(-0.02834111).epsilon(1e-4));
  CHECK(rep.delta_fc < 0);
  // both passes rounded in one call: no corner events survive
  CHECK(detect_corners(rounded).corners.empty());
  CHECK_FALSE(self_intersects(rounded));
  // inserted arcs curve at 1/eps
  CHECK(rep.arc_k_min >= 1 / (2 * 0.01));
  CHECK(rep.arc_k_max <= 2 / 0.01);
}

TEST_CASE("spherical wedge rounding certifies with curvature slack") {
  const Surface sph = Surface::sphere(1.0);
  const Vec3 pole(0, 0, 1);
  std::vector<Vec3> m1, m2;
  for (int i = 0; i <= 40; ++i) {
    const double s = 0.4 * i / 40;
    m1.emplace_back(std::sin(s), 0, std::cos(s));
    m2.emplace_back(0, std::sin(s), std::cos(s));
  }
  const ChartFrame chart = exp_chart(sph, pole, 0.5);
  const double eps = 0.05, c = 1.0;
  const WedgeRounding rep = round_wedge(m1, m2, eps, c, chart);
  CHECK(rep.delta_fc < 0);
  // at this scale the flat sliver formulas still describe the rounding
  CHECK(rep.delta_fc ==
        doctest::Approx(wedge_dl(M_PI / 2, eps) - c * wedge_da(M_PI / 2, eps))
            .epsilon(5e-2));
  CHECK(rep.arc_k_min >= 1 / (2 * eps));
  CHECK(rep.arc_k_max <= 2 / eps);
}
