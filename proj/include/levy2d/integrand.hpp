#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "levy2d/fundamental_domain.hpp"
#include "levy2d/geometry.hpp"
#include "levy2d/gk.hpp"

namespace levy2d {

// Ingredients of one boundary-edge term of the reduced integrand.
struct InnerTerm {
  double phi_plus;
  double phi_minus;
  double D;
  double tau_minus;
  double tau_plus;
  double x;
};

// Xi(a,b,c1,c3) = (1 - a1 b) sqrt(1 - c1^2) - a2 (b c1 - c3). Strictly
// positive on F(a, b) (in fact > 1/24).
inline double xi(ParamPoint a, double b, double c1, double c3) {
  if (!(c1 >= -1.0 && c1 <= 1.0)) throw std::domain_error("xi: |c1| must be <= 1");
  return (1.0 - a.a1 * b) * std::sqrt((1.0 - c1) * (1.0 + c1)) -
         a.a2 * (b * c1 - c3);
}

// Denominator of the log-ratio argument x.
//
// LEVY2D_PUBLISHED_X_DENOMINATOR reinstates the expression exactly as it
// appears in the published derivation (a misprint: the minus sign between
// phi_plus and the tau_plus*tau_minus*phi_minus term is dropped). It exists
// only as a negative control for the oracle-equivalence tests.
inline double x_denominator(const InnerTerm& t, double a2b) {
#ifdef LEVY2D_PUBLISHED_X_DENOMINATOR
  return t.phi_plus * t.tau_plus * t.tau_minus * t.phi_minus -
         a2b * (t.tau_plus + t.tau_minus);
#else
  return t.phi_plus - t.tau_plus * t.tau_minus * t.phi_minus -
         a2b * (t.tau_plus + t.tau_minus);
#endif
}

// The log-ratio argument x for one edge term. |x| < 1 on every valid row.
inline double x_value(const InnerTerm& t, double a2b) {
  const double den = x_denominator(t, a2b);
  if (den == 0.0) throw std::domain_error("x_value: singular denominator");
  return (t.tau_plus - t.tau_minus) * std::sqrt(t.D) / den;
}

// (1/x) * ln((1-x)/(1+x)) continued through the removable singularity at 0
// with its even series; always <= -2 on (-1, 1).
inline double log_kernel(double x) {
  const double ax = std::abs(x);
  if (!(ax < 1.0)) throw std::domain_error("log_kernel: |x| must be < 1");
  if (ax < 1e-4) {
    const double x2 = x * x;
    return -2.0 * (1.0 + x2 * (1.0 / 3.0 + x2 * (1.0 / 5.0 + x2 / 7.0)));
  }
  return (std::log1p(-x) - std::log1p(x)) / x;
}

// Closed-form value of the b-slice integrand of 3 * mu_S: the signed sum over
// the horizontal boundary edges of F(a, b).
inline double inner_integrand(ParamPoint a, double b) {
  const double a1b = 1.0 - a.a1 * b;
  const double a2b = a.a2 * b;
  const double q = a1b * a1b + a2b * a2b;
  double sum = 0.0;
  for (const EdgeRow& row : edge_rows(a, b)) {
    InnerTerm t;
    t.tau_minus = tau_of_c1(row.c1_minus);
    t.tau_plus = tau_of_c1(row.c1_plus);
    t.phi_plus = a1b + a.a2 * row.c3;
    t.phi_minus = a1b - a.a2 * row.c3;
    t.D = a1b * a1b + a.a2 * a.a2 * (b * b - row.c3 * row.c3);
    t.x = x_value(t, a2b);
    const double den = x_denominator(t, a2b);
    sum += row.sign * 2.0 * std::numbers::pi * row.c3 *
           (t.tau_plus - t.tau_minus) / (q * den) * log_kernel(t.x);
  }
  return sum;
}

struct InnerOracleResult {
  double value = 0.0;
  double error = 0.0;
  long long evaluations = 0;
};

// Independent route to the same quantity: 2*pi/(1 - a1 b) times the integral
// of 1/Xi^2 over F(a, b), by adaptive tensor quadrature on the strip
// decomposition. Certifies the boundary-reduction closed form.
inline InnerOracleResult inner_oracle_detailed(ParamPoint a, double b,
                                               double rel_tol,
                                               long long max_evals = 50'000'000) {
  const RectilinearDomain f = fundamental_domain(a, b);
  std::vector<detail::Box2d> seeds;
  int tag = 0;
  for (const Rect& r : f.strips())
    seeds.push_back({r.x0, r.x1, r.y0, r.y1, 0, 0, 0, 0, 0, tag++, 0});
  const auto g = [&](double c1, double c3) {
    const double v = xi(a, b, c1, c3);
    return 1.0 / (v * v);
  };
  const Quad2dResult q = integrate_2d(g, std::move(seeds), 0.0, rel_tol, max_evals);
  const double scale = 2.0 * std::numbers::pi / (1.0 - a.a1 * b);
  return {scale * q.value, scale * q.error, q.evaluations};
}

inline double inner_oracle(ParamPoint a, double b, double rel_tol) {
  return inner_oracle_detailed(a, b, rel_tol).value;
}

}  // namespace levy2d
