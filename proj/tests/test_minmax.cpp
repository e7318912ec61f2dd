#include <cmath>

#include "doctest.h"

#include "cflow/minmax.hpp"
#include "support.hpp"

using namespace cflow;
using namespace cflow::testing;

TEST_CASE("slice evaluation by kind") {
  const Surface torus = Surface::torus(3.0, 1.0);
  const double c = 0.8;

  Slice empty;
  empty.surface = torus;
  CHECK(eval_slice(empty, c).value == 0.0);

  Slice full;
  full.kind = SliceKind::Full;
  full.surface = torus;
  const FcValue fv = eval_slice(full, c);
  CHECK(fv.area == doctest::Approx(3.0));
  CHECK(fv.value == doctest::Approx(-c * 3.0));

  Slice single;
  single.kind = SliceKind::SingleCurve;
  single.surface = torus;
  single.curve = lens_curve(torus, 1.0, 1024).curve;
  const FcValue sv = eval_slice(single, c);
  CHECK(sv.length == doctest::Approx(2 * M_PI / 3).epsilon(1e-4));
  CHECK(sv.value == doctest::Approx(sv.length - c * sv.area));
}

TEST_CASE("annulus band between vertical walls") {
  // the band [x0, x1] has two geodesic walls and the exact trapezoid area
  const Surface torus = Surface::torus(3.0, 1.0);
  const double c = 1.0;
  const SweepoutFamily fam = lens_family(torus, c);
  // stage (c) slide: t in (1/2, 5/6) produces an AnnulusPair
  const Slice mid = fam.slice(2.0 / 3);
  REQUIRE(mid.kind == SliceKind::AnnulusPair);
  REQUIRE(mid.walls.has_value());
  const double H = 1.0;
  CHECK(mid.walls->first.total_length() == doctest::Approx(H).epsilon(1e-9));
  CHECK(mid.walls->second.total_length() == doctest::Approx(H).epsilon(1e-9));
  CHECK(mid.band_area > 0);
  CHECK(mid.band_area < 3.0);
  const FcValue v = eval_slice(mid, c);
  CHECK(v.length == doctest::Approx(2 * H).epsilon(1e-9));
  CHECK(v.area == doctest::Approx(mid.band_area));
  CHECK(v.value == doctest::Approx(2 * H - c * mid.band_area));
}

TEST_CASE("slide stage area grows linearly with the wall gap") {
  const Surface torus = Surface::torus(3.0, 1.0);
  const double c = 1.0;
  const SweepoutFamily fam = lens_family(torus, c);
  const double rho = 1 / c, d = std::sqrt(rho * rho - 0.25);
  const double f = rho - d;  // half-width of the morphed-out band
  // knots of the slide stage
  const double t2 = 0.5, t3 = 5.0 / 6;
  const double s_max = 1.5 - 2 * f;
  for (double u : {0.25, 0.5, 0.75}) {
    const Slice s = fam.slice(t2 + u * (t3 - t2));
    REQUIRE(s.kind == SliceKind::AnnulusPair);
    const double expect = 2 * (f + u * s_max) * 1.0;
    CHECK(s.band_area == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("lens family endpoints and anchors") {
  const Surface torus = Surface::torus(3.0, 1.0);
  const SweepoutFamily fam = lens_family(torus, 1.0);
  CHECK(fam.slice(0.0).kind == SliceKind::Empty);
  CHECK(fam.slice(1.0).kind == SliceKind::Full);
  REQUIRE(fam.anchors.size() >= 2);
  CHECK(fam.anchors.front() == 0.0);
  CHECK(fam.anchors.back() == 1.0);
  // every interior anchor yields a valid slice
  for (double t : fam.anchors) {
    const Slice s = fam.slice(t);
    if (s.kind == SliceKind::SingleCurve) {
      s.curve->validate();
      CHECK_FALSE(self_intersects(*s.curve));
    }
    if (s.kind == SliceKind::AnnulusPair) {
      s.walls->first.validate();
      s.walls->second.validate();
    }
  }
}

TEST_CASE("slices stay embedded across the sweep") {
  const Surface torus = Surface::torus(3.0, 1.0);
  const SweepoutFamily fam = lens_family(torus, 1.0, 1024);
  for (int i = 1; i < 24; ++i) {
    const Slice s = fam.slice(i / 24.0);
    if (s.kind == SliceKind::SingleCurve) {
      s.curve->validate();
      CHECK_FALSE(self_intersects(*s.curve));
    }
  }
}

TEST_CASE("anti-lens complement area") {
  const Surface torus = Surface::torus(3.0, 1.0);
  const double c = 1.0;
  const SweepoutFamily fam = lens_family(torus, c);
  // stage (e): the complementary lens about x = 0 shrinks as t -> 1
  const double t4 = 11.0 / 12;
  const double t = t4 + 0.5 * (1 - t4);
  const Slice s = fam.slice(t);
  REQUIRE(s.kind == SliceKind::SingleCurve);
  const double mu = (1 - t) / (1 - t4);
  const double lens_area = lens_exact_area(c, 1.0);
  const FcValue v = eval_slice(s, c);
  CHECK(v.area ==
        doctest::Approx(3.0 - mu * mu * lens_area).epsilon(1e-4));
}

TEST_CASE("torus width matches the exact lens value") {
  const Surface torus = Surface::torus(3.0, 1.0);
  const double c = 1.0;
  const WidthEstimate w = eval_family(lens_family(torus, c), c, 64);
  const double exact =
      lens_exact_length(c, 1.0) - c * lens_exact_area(c, 1.0);
  CHECK(w.value == doctest::Approx(exact).epsilon(1e-6));
  CHECK(w.t_star == doctest::Approx(1.0 / 3).epsilon(1e-3));
  // profile endpoints are the sentinels
  REQUIRE(w.profile.size() >= 64);
  CHECK(w.profile.front().t == 0.0);
  CHECK(w.profile.front().fc == 0.0);
  CHECK(w.profile.back().t == 1.0);
  CHECK(w.profile.back().fc == doctest::Approx(-c * 3.0));
  // interior slices score strictly below the max away from t*
  for (double t : {0.1, 0.2, 0.5, 0.8}) {
    const FcValue v = eval_slice(lens_family(torus, c).slice(t), c);
    CHECK(v.value < w.value);
  }
  // width is attained below the doubled geodesic barrier
  CHECK(w.value < 2.0);
  CHECK(w.value > 0.0);
}

TEST_CASE("width stays positive across c") {
  const Surface torus = Surface::torus(3.0, 1.0);
  // c*H = 2 is rejected: the lens touches the seam and the sweepout pinches
  CHECK_THROWS_AS(lens_family(torus, 2.0, 1024), GeometryError);
  for (double c : {0.5, 1.0, 1.9}) {
    const WidthEstimate w = eval_family(lens_family(torus, c, 1024), c, 16);
    CHECK(w.value > 0.0);
  }
}

TEST_CASE("profile is continuous at the grid scale") {
  const Surface torus = Surface::torus(3.0, 1.0);
  const WidthEstimate w = eval_family(lens_family(torus, 1.0, 1024), 1.0, 64);
  for (size_t i = 0; i + 1 < w.profile.size(); ++i) {
    const double dt = w.profile[i + 1].t - w.profile[i].t;
    const double df = std::abs(w.profile[i + 1].fc - w.profile[i].fc);
    CHECK(df <= 40 * std::max(dt, 1e-12) + 1e-9);
  }
}

TEST_CASE("sphere latitude family widths") {
  const Surface sph = Surface::sphere(1.0);
  // at c ~ 0 the width recovers the equator length 2 pi
  const WidthEstimate w0 = eval_family(latitude_family(sph), 1e-6, 64);
  CHECK(w0.value == doctest::Approx(2 * M_PI).epsilon(1e-3));
  CHECK(w0.t_star == doctest::Approx(0.5).epsilon(2e-2));
  // at c = 1 the max over latitudes is 2 pi (sqrt 2 - 1) at z = -1/sqrt 2
  const WidthEstimate w1 = eval_family(latitude_family(sph), 1.0, 64);
  CHECK(w1.value ==
        doctest::Approx(2 * M_PI * (std::sqrt(2.0) - 1)).epsilon(1e-3));
  const double z_star = 2 * w1.t_star - 1;
  CHECK(z_star == doctest::Approx(-1 / std::sqrt(2.0)).epsilon(2e-2));
  // endpoints: empty pole cap and full sphere
  CHECK(w1.profile.front().fc == 0.0);
  CHECK(w1.profile.back().fc == doctest::Approx(-4 * M_PI));
}

TEST_CASE("grid floor is enforced") {
  const Surface torus = Surface::torus(3.0, 1.0);
  CHECK_THROWS_AS(eval_family(lens_family(torus, 1.0, 1024), 1.0, 8),
                  GeometryError);
}

TEST_CASE("perturbing the max slice descends on both sides") {
  const Surface torus = Surface::torus(3.0, 1.0);
  const double c = 1.0;
  const SweepoutFamily fam = lens_family(torus, c, 1024);
  const WidthEstimate w = eval_family(fam, c, 16);
  FlowConfig cfg;
  cfg.c = c;
  cfg.max_time = 0.05;
  cfg.max_steps = 100000;
  const double delta = 0.003;
  const PerturbReport rep =
      perturb_and_reflow(fam, c, w.t_star, delta, cfg);
  CHECK(rep.value == doctest::Approx(w.value).epsilon(1e-6));
  CHECK(rep.descended_inward);
  CHECK(rep.descended_outward);
  CHECK(rep.min_fc_inward < rep.value - 0.1 * delta * delta);
  CHECK(rep.min_fc_outward < rep.value - 0.1 * delta * delta);
}

TEST_CASE("perturbation requires a boundary slice") {
  const Surface torus = Surface::torus(3.0, 1.0);
  const SweepoutFamily fam = lens_family(torus, 1.0, 1024);
  FlowConfig cfg;
  // t = 2/3 sits in the slide stage: an annulus pair, not a single curve
  CHECK_THROWS_AS(perturb_and_reflow(fam, 1.0, 2.0 / 3, 0.01, cfg),
                  GeometryError);
}
