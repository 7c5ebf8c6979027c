#include <gtest/gtest.h>

#include <cmath>

#include "levy2d/gk.hpp"
#include "levy2d/integrand.hpp"
#include "levy2d/rng.hpp"
#include "levy2d/verify.hpp"

using namespace levy2d;

namespace {

ParamPoint draw_point(Xoshiro256pp& rng) {
  return verify_detail::random_base_point(rng);
}

}  // namespace

TEST(Xi, ClosedFormValues) {
  EXPECT_NEAR(xi({-0.9, 0.3}, 0.3, 0.0, 0.0), 1.27, 1e-15);
  EXPECT_THROW(xi({-0.9, 0.3}, 0.3, 1.5, 0.0), std::domain_error);
}

TEST(Xi, ExceedsLowerBoundOnDomainSamples) {
  Xoshiro256pp rng(41);
  double lo = 1e9;
  for (int i = 0; i < 100000; ++i) {
    const ParamPoint a = draw_point(rng);
    const double b = uniform(rng, 1e-6, 1.0 - 1e-6);
    const RectilinearDomain f = fundamental_domain(a, b);
    const auto [c1, c3] = verify_detail::random_point_in_domain(rng, f);
    lo = std::min(lo, xi(a, b, c1, c3));
  }
  EXPECT_GT(lo, 1.0 / 24.0);
}

TEST(LogKernel, ValuesAndSeriesSwitch) {
  EXPECT_DOUBLE_EQ(log_kernel(0.0), -2.0);
  EXPECT_NEAR(log_kernel(0.5), 2.0 * std::log(1.0 / 3.0), 1e-14);
  EXPECT_NEAR(log_kernel(1e-6), -2.0 - (2.0 / 3.0) * 1e-12, 1e-16);
  // Continuity across the series/direct switch at |x| = 1e-4: adjacent
  // doubles on either side of the threshold, so any gap is branch
  // disagreement rather than the function's own slope.
  const double below = log_kernel(std::nextafter(1e-4, 0.0));
  const double above = log_kernel(1e-4);
  EXPECT_NEAR(below, above, 1e-15);
  for (double x = -0.999; x < 1.0; x += 0.037) EXPECT_LE(log_kernel(x), -2.0 + 1e-15);
  EXPECT_THROW(log_kernel(1.0), std::domain_error);
  EXPECT_THROW(log_kernel(-1.0), std::domain_error);
}

TEST(XValue, ZeroWidthEdgeAndRangeBound) {
  InnerTerm t{1.2, 0.9, 1.1, 0.3, 0.3, 0.0};
  EXPECT_DOUBLE_EQ(x_value(t, 0.1), 0.0);
  // All rows of the canonical instances give |x| < 1.
  for (const auto& inst : canonical_instances()) {
    const double a1b = 1.0 - inst.a.a1 * inst.b;
    for (const EdgeRow& row : edge_rows(inst.a, inst.b)) {
      InnerTerm term;
      term.tau_minus = tau_of_c1(row.c1_minus);
      term.tau_plus = tau_of_c1(row.c1_plus);
      term.phi_plus = a1b + inst.a.a2 * row.c3;
      term.phi_minus = a1b - inst.a.a2 * row.c3;
      term.D = a1b * a1b + inst.a.a2 * inst.a.a2 * (inst.b * inst.b - row.c3 * row.c3);
      const double x = x_value(term, inst.a.a2 * inst.b);
      EXPECT_LT(std::abs(x), 1.0);
    }
  }
}

TEST(XValue, LogRatioMatchesPreSubstitutionForm) {
  // (1/x) ln((1-x)/(1+x)) against the displayed ratio of quadratics,
  // ln{ (phi+ - 2 a2 b tau+ - phi- tau+^2) / (phi+ - 2 a2 b tau- - phi- tau-^2)
  //     * ((sqrtD + a2 b + phi- tau-) / (sqrtD + a2 b + phi- tau+))^2 } / sqrtD
  // which is the edge integral up to the same prefactor.
  const ParamPoint a{-0.9, 0.3};
  const double b = 0.3;
  const double a1b = 1.0 - a.a1 * b;
  for (const EdgeRow& row : edge_rows(a, b)) {
    InnerTerm t;
    t.tau_minus = tau_of_c1(row.c1_minus);
    t.tau_plus = tau_of_c1(row.c1_plus);
    t.phi_plus = a1b + a.a2 * row.c3;
    t.phi_minus = a1b - a.a2 * row.c3;
    t.D = a1b * a1b + a.a2 * a.a2 * (b * b - row.c3 * row.c3);
    const double x = x_value(t, a.a2 * b);
    const double sd = std::sqrt(t.D);
    const auto quad = [&](double tau) {
      return t.phi_plus - 2.0 * a.a2 * b * tau - t.phi_minus * tau * tau;
    };
    const auto lin = [&](double tau) { return sd + a.a2 * b + t.phi_minus * tau; };
    const double direct =
        std::log(quad(t.tau_plus) / quad(t.tau_minus) *
                 (lin(t.tau_minus) * lin(t.tau_minus)) /
                 (lin(t.tau_plus) * lin(t.tau_plus)));
    EXPECT_NEAR(x * log_kernel(x), direct, 1e-10 * std::abs(direct));
  }
}

TEST(InnerIntegrand, FiniteAndPositiveOnRandomPoints) {
  Xoshiro256pp rng(42);
  for (int i = 0; i < 20000; ++i) {
    const ParamPoint a = draw_point(rng);
    const double b = uniform(rng, 1e-6, 1.0 - 1e-6);
    const double v = inner_integrand(a, b);
    ASSERT_TRUE(std::isfinite(v)) << a.a1 << "," << a.a2 << "," << b;
    ASSERT_GT(v, 0.0);
  }
}

TEST(InnerIntegrand, BoundedNearLowEdge) {
  // a2 -> 0 keeps the closed form finite (region II and III formulas).
  for (double a2 : {1e-6, 1e-9, 1e-12}) {
    const double v2 = inner_integrand({-0.7, a2}, 0.4);
    const double v3 = inner_integrand({-0.3, a2}, 0.4);
    EXPECT_TRUE(std::isfinite(v2));
    EXPECT_TRUE(std::isfinite(v3));
    EXPECT_GT(v2, 0.0);
    EXPECT_GT(v3, 0.0);
  }
}

TEST(InnerOracle, MatchesClosedFormOnCanonicalInstances) {
  for (const auto& inst : canonical_instances()) {
    const double closed = inner_integrand(inst.a, inst.b);
    const InnerOracleResult q = inner_oracle_detailed(inst.a, inst.b, 1e-9);
    EXPECT_NEAR(closed, q.value, 1e-6 * std::abs(q.value))
        << "a=(" << inst.a.a1 << "," << inst.a.a2 << ") b=" << inst.b;
    EXPECT_GT(q.value, 0.0);
  }
}

TEST(InnerOracle, MatchesClosedFormOnRandomPoints) {
  Xoshiro256pp rng(43);
  for (int r = 0; r < 3; ++r)
    for (int i = 0; i < 12; ++i) {
      const ParamPoint a =
          verify_detail::random_point_in_region(rng, static_cast<Region>(r));
      const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
      const double closed = inner_integrand(a, b);
      const double oracle = inner_oracle(a, b, 1e-8);
      EXPECT_NEAR(closed, oracle, 1e-6 * std::abs(oracle))
          << "region " << r << " a=(" << a.a1 << "," << a.a2 << ") b=" << b;
    }
}

TEST(InnerOracle, ConvergesWithTolerance) {
  const ParamPoint a{-0.9, 0.3};
  const double b = 0.3;
  const double ref = inner_oracle(a, b, 1e-10);
  const double coarse = inner_oracle(a, b, 1e-4);
  const double fine = inner_oracle(a, b, 1e-6);
  EXPECT_LE(std::abs(fine - ref), std::abs(coarse - ref) + 1e-12);
  EXPECT_NEAR(coarse, ref, 1e-3 * std::abs(ref));
}

TEST(InnerOracle, BudgetExceededCarriesEstimate) {
  try {
    inner_oracle_detailed({-0.9, 0.3}, 0.3, 1e-12, 400);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_GT(e.value, 0.0);
    EXPECT_TRUE(std::isfinite(e.value));
    EXPECT_GE(e.evaluations, 400);
  }
}

TEST(Adaptive1d, SmokeOnKnownIntegrals) {
  const auto r = integrate_1d([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(r.value, std::exp(1.0) - 1.0, 1e-12);
  const auto osc =
      integrate_1d([](double x) { return std::sin(40.0 * x); }, 0.0, 1.0, 1e-12);
  EXPECT_NEAR(osc.value, (1.0 - std::cos(40.0)) / 40.0, 1e-11);
}

TEST(Adaptive2d, SmokeOnSeparableIntegral) {
  std::vector<detail::Box2d> seeds{{0.0, 1.0, 0.0, 1.0}};
  const auto r = integrate_2d(
      [](double x, double y) { return std::exp(x) * std::sin(8.0 * y); }, seeds,
      1e-12, 0.0, 10'000'000);
  const double expect = (std::exp(1.0) - 1.0) * (1.0 - std::cos(8.0)) / 8.0;
  EXPECT_NEAR(r.value, expect, 1e-11);
}
