#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace levy2d {

// A point a = (a1, a2) of the base parameter domain (also reused as a plain
// 2D point where circle geometry is needed).
struct ParamPoint {
  double a1 = 0.0;
  double a2 = 0.0;
};

inline double norm2(ParamPoint p) { return p.a1 * p.a1 + p.a2 * p.a2; }
inline double norm(ParamPoint p) { return std::sqrt(norm2(p)); }

// Sixth root of unity in the first quadrant; its two unit circles split the
// base domain into the three integrand cases.
inline ParamPoint sixth_root() { return {0.5, std::sqrt(3.0) / 2.0}; }

// Base domain: open unit disk minus the open unit disk centered at 1.
inline bool in_base_domain(ParamPoint a) {
  return norm2(a) < 1.0 && (a.a1 - 1.0) * (a.a1 - 1.0) + a.a2 * a.a2 >= 1.0;
}

// Upper half of the base domain.
inline bool in_base_domain_upper(ParamPoint a) {
  return a.a2 >= 0.0 && in_base_domain(a);
}

enum class Region { I, II, III };

inline const char* region_name(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    default: return "III";
  }
}

// Intersection points of the unit circles centered at 0 and at a:
//   chi_pm(a) = a/2 +- (i a / |a|) sqrt(1 - |a|^2/4).
inline ParamPoint chi(ParamPoint a, int branch) {
  const double r2 = norm2(a);
  if (r2 <= 0.0 || r2 >= 4.0)
    throw std::domain_error("chi: circles coincide or do not intersect");
  const double r = std::sqrt(r2);
  const double s = std::sqrt(1.0 - 0.25 * r2) / r;
  const double sign = branch >= 0 ? 1.0 : -1.0;
  // i*a = (-a2, a1)
  return {0.5 * a.a1 - sign * s * a.a2, 0.5 * a.a2 + sign * s * a.a1};
}

// First coordinate of chi(a, +); supplies every vertical-edge abscissa of the
// fundamental domain. Always lies in [-1, 1].
inline double kappa(ParamPoint a) {
  const double r2 = norm2(a);
  if (r2 <= 0.0 || r2 >= 4.0)
    throw std::domain_error("kappa: |a| must lie in (0, 2)");
  return 0.5 * a.a1 - a.a2 * std::sqrt(1.0 - 0.25 * r2) / std::sqrt(r2);
}

// Inverse of c1 = 2*tau/(1+tau^2) on [-1, 1]. The equivalent form
// c1/(1+sqrt(1-c1^2)) is exact at c1 = 0 and avoids cancellation.
inline double tau_of_c1(double c1) {
  if (!(c1 >= -1.0 && c1 <= 1.0))
    throw std::domain_error("tau_of_c1: |c1| must be <= 1");
  return c1 / (1.0 + std::sqrt((1.0 - c1) * (1.0 + c1)));
}

// Closed-form tau at the abscissa kappa(a), with the convention sgn(0) = +1.
// Two caveats against the published expression: the quotient is 0/0 on the
// circle a1^2 + a2^2 = -sgn(a1)*2*a2 (a removable line that does cross the
// upper base domain), and the sgn(a1) branch picks the reciprocal root of
// c1 = 2*tau/(1+tau^2) on part of the a1 < 0 half. The roots of that
// quadratic are exact reciprocals, so folding |tau| > 1 back recovers the
// principal root everywhere.
inline double tau_of_a(ParamPoint a) {
  const double r2 = norm2(a);
  if (r2 <= 0.0 || r2 >= 4.0)
    throw std::domain_error("tau_of_a: |a| must lie in (0, 2)");
  const double sgn = a.a1 >= 0.0 ? 1.0 : -1.0;
  const double den = r2 + sgn * 2.0 * a.a2;
  if (den == 0.0) throw std::domain_error("tau_of_a: degenerate denominator");
  const double t = (2.0 * a.a1 - sgn * std::sqrt(r2) * std::sqrt(4.0 - r2)) / den;
  return std::abs(t) <= 1.0 ? t : 1.0 / t;
}

// Region labels. II is closed: points on either splitting circle get II.
inline Region classify_region(ParamPoint a) {
  if (!in_base_domain_upper(a))
    throw std::domain_error("classify_region: point outside the base domain");
  const ParamPoint xi = sixth_root();
  const double d_minus = (a.a1 - xi.a1) * (a.a1 - xi.a1) + (a.a2 - xi.a2) * (a.a2 - xi.a2);
  if (d_minus < 1.0) return Region::I;
  const double d_plus = (a.a1 + xi.a1) * (a.a1 + xi.a1) + (a.a2 + xi.a2) * (a.a2 + xi.a2);
  if (d_plus < 1.0) return Region::III;
  return Region::II;
}

// All nonzero integer pairs (m, n) with |m|,|n| <= bound such that the
// cylinder translated by m*u + n*v (u = (1,0,b), v = (a1,a2,1)) overlaps the
// unit cylinder with nonempty interior: |m + n*a| < 2 and |m*b + n| < 2.
// Returned sorted lexicographically.
inline std::vector<std::pair<int, int>> enumerate_overlapping_translates(
    ParamPoint a, double b, int bound) {
  if (!in_base_domain_upper(a) || b < 0.0 || b >= 1.0 || bound < 2)
    throw std::domain_error("enumerate_overlapping_translates: bad input");
  std::vector<std::pair<int, int>> out;
  for (int m = -bound; m <= bound; ++m)
    for (int n = -bound; n <= bound; ++n) {
      if (m == 0 && n == 0) continue;
      const double hx = m + n * a.a1;
      const double hy = n * a.a2;
      if (hx * hx + hy * hy < 4.0 && std::abs(m * b + n) < 2.0)
        out.emplace_back(m, n);
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace levy2d
