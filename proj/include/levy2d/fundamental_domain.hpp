#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "levy2d/geometry.hpp"
#include "levy2d/rng.hpp"

namespace levy2d {

enum class Quadrant { NW, NE, SW, SE };

// Corner notch removed from the bounding rectangle. Bracket conventions are
// half-open:
//   NW(x,y) = [x_min, x) x (y, y_max]    NE(x,y) = (x, x_max] x (y, y_max]
//   SW(x,y) = [x_min, x) x [y_min, y)    SE(x,y) = (x, x_max] x [y_min, y)
struct CornerCut {
  Quadrant q;
  double x;
  double y;
};

struct Rect {
  double x0, x1, y0, y1;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

// Axis-aligned rectangle minus up to four corner cuts; the (c1, c3) shadow of
// the admissible third-basis-vector region.
struct RectilinearDomain {
  double x_min, x_max, y_min, y_max;
  std::vector<CornerCut> cuts;

  bool in_cut(const CornerCut& c, double x, double y) const {
    switch (c.q) {
      case Quadrant::NW: return x < c.x && y > c.y;
      case Quadrant::NE: return x > c.x && y > c.y;
      case Quadrant::SW: return x < c.x && y < c.y;
      case Quadrant::SE: return x > c.x && y < c.y;
    }
    return false;
  }

  bool contains(double x, double y) const {
    if (x < x_min || x > x_max || y < y_min || y > y_max) return false;
    for (const auto& c : cuts)
      if (in_cut(c, x, y)) return false;
    return true;
  }

  double cut_area(const CornerCut& c) const {
    const double w =
        (c.q == Quadrant::NW || c.q == Quadrant::SW) ? c.x - x_min : x_max - c.x;
    const double h =
        (c.q == Quadrant::NW || c.q == Quadrant::NE) ? y_max - c.y : c.y - y_min;
    return w * h;
  }

  // Cuts never overlap for domains built by fundamental_domain(), so the
  // bounding-rectangle area minus the cut areas is exact.
  double area() const {
    double a = (x_max - x_min) * (y_max - y_min);
    for (const auto& c : cuts) a -= cut_area(c);
    return a;
  }

  // Decomposition into maximal vertical strips, each a single rectangle.
  // Degenerate (zero-width) strips are dropped.
  std::vector<Rect> strips() const {
    std::vector<double> xs{x_min, x_max};
    for (const auto& c : cuts) xs.push_back(c.x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Rect> out;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (xs[i + 1] - xs[i] <= 0.0) continue;
      const double mid = 0.5 * (xs[i] + xs[i + 1]);
      double lo = y_min, hi = y_max;
      for (const auto& c : cuts) {
        const bool covers = (c.q == Quadrant::NW || c.q == Quadrant::SW)
                                ? mid < c.x
                                : mid > c.x;
        if (!covers) continue;
        if (c.q == Quadrant::NW || c.q == Quadrant::NE)
          hi = std::min(hi, c.y);
        else
          lo = std::max(lo, c.y);
      }
      if (hi > lo) out.push_back({xs[i], xs[i + 1], lo, hi});
    }
    return out;
  }

  // Ordered counterclockwise boundary polygon, starting at the bottom-left
  // vertex. Collinear intermediate points are merged.
  std::vector<std::array<double, 2>> boundary_vertices() const {
    const auto ss = strips();
    std::vector<std::array<double, 2>> pts;
    for (const auto& s : ss) {  // bottom, left to right
      pts.push_back({s.x0, s.y0});
      pts.push_back({s.x1, s.y0});
    }
    for (auto it = ss.rbegin(); it != ss.rend(); ++it) {  // top, right to left
      pts.push_back({it->x1, it->y1});
      pts.push_back({it->x0, it->y1});
    }
    std::vector<std::array<double, 2>> out;
    for (const auto& p : pts) {
      while (out.size() >= 2) {
        const auto& a = out[out.size() - 2];
        const auto& b = out[out.size() - 1];
        const bool collinear = (a[0] == b[0] && b[0] == p[0]) ||
                               (a[1] == b[1] && b[1] == p[1]);
        if (collinear)
          out.pop_back();
        else
          break;
      }
      if (out.empty() || out.back() != p) out.push_back(p);
    }
    // Close-up pass across the seam start/end.
    while (out.size() >= 3) {
      const auto& a = out[out.size() - 2];
      const auto& b = out.back();
      const auto& c = out.front();
      if ((a[0] == b[0] && b[0] == c[0]) || (a[1] == b[1] && b[1] == c[1]))
        out.pop_back();
      else
        break;
    }
    return out;
  }
};

// One horizontal edge of the domain boundary: height c3, orientation sign,
// and the abscissas of its endpoints (tau(c1_minus) < tau(c1_plus)).
struct EdgeRow {
  double c3;
  int sign;
  double c1_minus;
  double c1_plus;
};

namespace detail {

inline void require_interior(ParamPoint a, double b, const char* who) {
  if (!(b > 0.0 && b < 1.0))
    throw std::domain_error(std::string(who) + ": b must lie in (0,1)");
  const double d0 = norm2(a);
  const double d1 = (a.a1 - 1.0) * (a.a1 - 1.0) + a.a2 * a.a2;
  if (!(a.a2 > 0.0) || !(d0 > 0.0 && d0 < 1.0) || !(d1 > 1.0))
    throw std::domain_error(std::string(who) +
                            ": a must lie in the open upper base domain");
  const ParamPoint xi = sixth_root();
  const double dm = (a.a1 - xi.a1) * (a.a1 - xi.a1) + (a.a2 - xi.a2) * (a.a2 - xi.a2);
  const double dp = (a.a1 + xi.a1) * (a.a1 + xi.a1) + (a.a2 + xi.a2) * (a.a2 + xi.a2);
  if (dm == 1.0 || dp == 1.0)
    throw std::domain_error(std::string(who) + ": a sits on a region boundary");
}

}  // namespace detail

// Builds the fundamental domain F(a, b) of the (c1, c3) plane for the region
// of a. All vertical-edge abscissas are kappa values of circle intersections.
inline RectilinearDomain fundamental_domain(ParamPoint a, double b) {
  detail::require_interior(a, b, "fundamental_domain");
  const ParamPoint abar{a.a1, -a.a2};
  RectilinearDomain f;
  switch (classify_region(a)) {
    case Region::I:
      f = {kappa({a.a1 - 1.0, a.a2}), 0.5, 0.0, 1.0, {}};
      f.cuts = {{Quadrant::SW, -0.5, 1.0 - b},
                {Quadrant::SE, kappa({1.0 - abar.a1, -abar.a2}), b}};
      break;
    case Region::II:
      f = {kappa(a), 0.5, -b, 1.0, {}};
      f.cuts = {{Quadrant::SW, -0.5, 1.0 - b},
                {Quadrant::SE, kappa({-abar.a1, -abar.a2}), 0.0}};
      break;
    case Region::III:
      f = {-0.5, 0.5, -1.0, 1.0, {}};
      f.cuts = {{Quadrant::NW, kappa(a), 0.0},
                {Quadrant::NE, kappa({abar.a1 + 1.0, abar.a2}), b},
                {Quadrant::SW, kappa({-a.a1 - 1.0, -a.a2}), -b},
                {Quadrant::SE, kappa({-abar.a1, -abar.a2}), 0.0}};
      break;
  }
  return f;
}

// The nonzero-height horizontal edges of F(a, b), one row per boundary edge,
// signed by orientation (+ where the domain lies above the edge).
inline std::vector<EdgeRow> edge_rows(ParamPoint a, double b) {
  detail::require_interior(a, b, "edge_rows");
  switch (classify_region(a)) {
    case Region::I: {
      const double k_am1 = kappa({a.a1 - 1.0, a.a2});
      const double k_1mabar = kappa({1.0 - a.a1, a.a2});
      return {{1.0, -1, k_am1, 0.5},
              {1.0 - b, +1, k_am1, -0.5},
              {b, +1, k_1mabar, 0.5}};
    }
    case Region::II: {
      const double k_a = kappa(a);
      const double k_mabar = kappa({-a.a1, a.a2});
      return {{1.0, -1, k_a, 0.5},
              {1.0 - b, +1, k_a, -0.5},
              {-b, +1, -0.5, k_mabar}};
    }
    default: {
      const double k_a = kappa(a);
      const double k_abarp1 = kappa({a.a1 + 1.0, -a.a2});
      const double k_mam1 = kappa({-a.a1 - 1.0, -a.a2});
      const double k_mabar = kappa({-a.a1, a.a2});
      return {{1.0, -1, k_a, k_abarp1},
              {b, -1, k_abarp1, 0.5},
              {-b, +1, -0.5, k_mam1},
              {-1.0, +1, k_mam1, k_mabar}};
    }
  }
}

// Membership that is robust to roundoff: returns +1/-1 when the point and
// all four eps-perturbations agree, 0 when the verdicts straddle a boundary
// (including the case of a feature narrower than eps, where the
// perturbations can land outside on both sides of an interior point).
inline int robust_contains(const RectilinearDomain& f, double x, double y,
                           double eps = 1e-9) {
  const bool c = f.contains(x, y);
  const bool q[4] = {f.contains(x - eps, y - eps), f.contains(x + eps, y - eps),
                     f.contains(x - eps, y + eps), f.contains(x + eps, y + eps)};
  if (c && q[0] && q[1] && q[2] && q[3]) return 1;
  if (!c && !q[0] && !q[1] && !q[2] && !q[3]) return -1;
  return 0;
}

// Checks that F(a, b) tiles the plane under the lattice Z*(1, b) + Z*(a1, 1):
// every sampled point has exactly one translate inside the domain. Points
// that land within 1e-9 of a boundary under some translate are resampled.
// The (m, n) search window comes from the lattice inverse applied to the
// extreme point-to-domain offsets, so no covering translate can be missed.
inline bool tiling_check_domain(const RectilinearDomain& f, ParamPoint a,
                                double b, int trials, std::uint64_t seed,
                                bool second_vector_uses_plus_a1 = true) {
  const double g2x = second_vector_uses_plus_a1 ? a.a1 : -a.a1;
  const double det = 1.0 - b * g2x;
  if (det == 0.0) return false;
  // Solve p + m*(1,b) + n*(g2x,1) = t over all corner offsets t - p.
  int m_lo = 0, m_hi = 0, n_lo = 0, n_hi = 0;
  for (const double dx : {f.x_min - 2.0, f.x_min + 2.0, f.x_max - 2.0, f.x_max + 2.0})
    for (const double dy : {f.y_min - 2.0, f.y_min + 2.0, f.y_max - 2.0, f.y_max + 2.0}) {
      const double m = (dx - g2x * dy) / det;
      const double n = (dy - b * dx) / det;
      m_lo = std::min(m_lo, static_cast<int>(std::floor(m)) - 1);
      m_hi = std::max(m_hi, static_cast<int>(std::ceil(m)) + 1);
      n_lo = std::min(n_lo, static_cast<int>(std::floor(n)) - 1);
      n_hi = std::max(n_hi, static_cast<int>(std::ceil(n)) + 1);
    }
  Xoshiro256pp rng(seed);
  int done = 0;
  int attempts = 0;
  while (done < trials) {
    if (++attempts > 20 * trials + 1000) return false;  // resampling runaway
    const double px = uniform(rng, -2.0, 2.0);
    const double py = uniform(rng, -2.0, 2.0);
    int hits = 0;
    bool ambiguous = false;
    for (int m = m_lo; m <= m_hi && !ambiguous; ++m)
      for (int n = n_lo; n <= n_hi; ++n) {
        const double x = px + m * 1.0 + n * g2x;
        const double y = py + m * b + n * 1.0;
        const int r = robust_contains(f, x, y);
        if (r == 0) {
          ambiguous = true;
          break;
        }
        if (r > 0) ++hits;
      }
    if (ambiguous) continue;
    if (hits != 1) return false;
    ++done;
  }
  return true;
}

inline bool tiling_check(ParamPoint a, double b, int trials, std::uint64_t seed,
                         bool second_vector_uses_plus_a1 = true) {
  return tiling_check_domain(fundamental_domain(a, b), a, b, trials, seed,
                             second_vector_uses_plus_a1);
}

// Brute-force transversal membership test. Builds u = (1,0,b), v = (a1,a2,1),
// w = (c1,c2,c3) and enumerates |m|,|n|,|k| <= bound; true iff every nonzero
// combination with cylinder norm max(sqrt(x1^2+x2^2), |x3|) <= 1 is +-u or
// +-v.
inline bool lattice_membership_oracle(ParamPoint a, double b, double c1,
                                      double c2, double c3, int bound = 3) {
  detail::require_interior(a, b, "lattice_membership_oracle");
  if (!(-c2 > std::sqrt(std::max(0.0, 1.0 - c1 * c1))))
    throw std::domain_error("lattice_membership_oracle: -c2 must exceed sqrt(1-c1^2)");
  for (int m = -bound; m <= bound; ++m)
    for (int n = -bound; n <= bound; ++n)
      for (int k = -bound; k <= bound; ++k) {
        if (m == 0 && n == 0 && k == 0) continue;
        const bool is_u = (n == 0 && k == 0 && (m == 1 || m == -1));
        const bool is_v = (m == 0 && k == 0 && (n == 1 || n == -1));
        if (is_u || is_v) continue;
        const double x1 = m + n * a.a1 + k * c1;
        const double x2 = n * a.a2 + k * c2;
        const double x3 = m * b + n + k * c3;
        if (std::max(std::sqrt(x1 * x1 + x2 * x2), std::abs(x3)) <= 1.0)
          return false;
      }
  return true;
}

}  // namespace levy2d
