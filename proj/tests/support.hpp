#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "cflow/curve.hpp"
#include "cflow/oracle.hpp"

namespace cflow::testing {

inline DiscreteCurve square(double side, int per_side,
                            const Vec2& origin = Vec2(0, 0)) {
  std::vector<Vec3> pts;
  pts.reserve(4 * per_side);
  const double h = side / per_side;
  for (int i = 0; i < per_side; ++i)
    pts.emplace_back(origin.x() + i * h, origin.y(), 0);
  for (int i = 0; i < per_side; ++i)
    pts.emplace_back(origin.x() + side, origin.y() + i * h, 0);
  for (int i = 0; i < per_side; ++i)
    pts.emplace_back(origin.x() + side - i * h, origin.y() + side, 0);
  for (int i = 0; i < per_side; ++i)
    pts.emplace_back(origin.x(), origin.y() + side - i * h, 0);
  return DiscreteCurve(Surface::plane(), pts);
}

// Closed C^1 oval of four circular arcs: side arcs of radius r_side at
// (+-a, 0), caps of radius r_cap at (0, -+b), psi the cap half-angle.
// Piecewise constant curvature {1/r_side, 1/r_cap}, sampled uniformly in
// arclength, traversed CCW.
inline DiscreteCurve two_radius_oval(double r_side, double r_cap, double psi,
                                     int n, const Surface& surf,
                                     const Vec2& center = Vec2(0, 0)) {
  const double a = (r_cap - r_side) * std::sin(psi);
  const double b = (r_cap - r_side) * std::cos(psi);
  struct Arc {
    Vec2 c;
    double r, a0, a1;
  };
  const double q = M_PI / 2;
  const std::vector<Arc> arcs = {
      {Vec2(a, 0), r_side, -(q - psi), q - psi},        // right side
      {Vec2(0, -b), r_cap, q - psi, q + psi},           // top cap
      {Vec2(-a, 0), r_side, q + psi, 3 * q - psi},      // left side
      {Vec2(0, b), r_cap, 3 * q - psi, 3 * q + psi}};   // bottom cap
  double total = 0;
  for (const Arc& arc : arcs) total += arc.r * (arc.a1 - arc.a0);
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    double s = total * i / n;
    for (const Arc& arc : arcs) {
      const double len = arc.r * (arc.a1 - arc.a0);
      if (s > len) {
        s -= len;
        continue;
      }
      const double ang = arc.a0 + s / arc.r;
      pts.emplace_back(center.x() + arc.c.x() + arc.r * std::cos(ang),
                       center.y() + arc.c.y() + arc.r * std::sin(ang), 0);
      break;
    }
  }
  return DiscreteCurve(surf, pts);
}

// Convex but not strictly convex: two straight sides joined by semicircles.
inline DiscreteCurve stadium(double r, double flat, int n,
                             const Vec2& center = Vec2(0, 0)) {
  const double total = 2 * flat + 2 * M_PI * r;
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    double s = total * i / n;
    double x, y;
    if (s < flat) {
      x = -flat / 2 + s;
      y = -r;
    } else if (s < flat + M_PI * r) {
      const double ang = -M_PI / 2 + (s - flat) / r;
      x = flat / 2 + r * std::cos(ang);
      y = r * std::sin(ang);
    } else if (s < 2 * flat + M_PI * r) {
      x = flat / 2 - (s - flat - M_PI * r);
      y = r;
    } else {
      const double ang = M_PI / 2 + (s - 2 * flat - M_PI * r) / r;
      x = -flat / 2 + r * std::cos(ang);
      y = r * std::sin(ang);
    }
    pts.emplace_back(center.x() + x, center.y() + y, 0);
  }
  return DiscreteCurve(Surface::plane(), pts);
}

// Smooth random star-shaped loop: radius r0 modulated by a low-order
// Fourier series with amplitudes small enough to keep it embedded.
inline DiscreteCurve random_flat_loop(const Surface& surf, std::uint32_t seed,
                                      int n, double r0,
                                      const Vec2& center = Vec2(0, 0)) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> amp(-0.06, 0.06);
  std::uniform_real_distribution<double> phase(0, 2 * M_PI);
  std::vector<double> a(5), ph(5);
  for (int m = 0; m < 5; ++m) {
    a[m] = amp(rng);
    ph[m] = phase(rng);
  }
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double th = 2 * M_PI * i / n;
    double r = 1;
    for (int m = 0; m < 5; ++m) r += a[m] * std::cos((m + 2) * th + ph[m]);
    pts.emplace_back(center.x() + r0 * r * std::cos(th),
                     center.y() + r0 * r * std::sin(th), 0);
  }
  return DiscreteCurve(surf, pts);
}

// Perturbed cap boundary on the sphere: latitude lambda0 modulated in
// height. Traversed with the region below on the left.
inline DiscreteCurve wavy_sphere_loop(const Surface& sphere, double z0,
                                      double amplitude, int mode, int n,
                                      double phase = 0) {
  const double R = sphere.radius();
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double th = -2 * M_PI * i / n;
    const double z = z0 + amplitude * std::sin(mode * th + phase);
    const double rho = std::sqrt(std::max(0.0, 1 - z * z));
    pts.emplace_back(R * rho * std::cos(th), R * rho * std::sin(th), R * z);
  }
  return DiscreteCurve(sphere, pts);
}

inline DiscreteCurve random_sphere_loop(const Surface& sphere,
                                        std::uint32_t seed, int n) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> z0(-0.3, 0.3);
  std::uniform_real_distribution<double> amp(0.0, 0.08);
  std::uniform_real_distribution<double> phase(0, 2 * M_PI);
  const double base = z0(rng);
  const double a2 = amp(rng), a3 = amp(rng);
  const double p2 = phase(rng), p3 = phase(rng);
  const double R = sphere.radius();
  std::vector<Vec3> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double th = -2 * M_PI * i / n;
    const double z =
        base + a2 * std::sin(2 * th + p2) + a3 * std::sin(3 * th + p3);
    const double rho = std::sqrt(1 - z * z);
    pts.emplace_back(R * rho * std::cos(th), R * rho * std::sin(th), R * z);
  }
  return DiscreteCurve(sphere, pts);
}

// Simpson integration of the lens chord width: an oracle for the enclosed
// area that shares no algebra with the closed form.
inline double lens_area_brute_force(double c, double H) {
  const double rho = 1.0 / c;
  const double d = std::sqrt(rho * rho - 0.25 * H * H);
  const auto width = [&](double y) {
    const double dy = y - 0.5 * H;
    return 2.0 * (std::sqrt(rho * rho - dy * dy) - d);
  };
  const int n = 20000;  // even
  const double h = H / n;
  double acc = width(0) + width(H);
  for (int i = 1; i < n; ++i) acc += width(i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace cflow::testing
