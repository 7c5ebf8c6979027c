#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "levy2d/fundamental_domain.hpp"
#include "levy2d/rng.hpp"
#include "levy2d/verify.hpp"

using namespace levy2d;

namespace {

ParamPoint draw_point(Xoshiro256pp& rng) {
  return verify_detail::random_base_point(rng);
}

}  // namespace

TEST(BuildDomain, RegionIInstance) {
  const RectilinearDomain f = fundamental_domain({0.0, 0.3}, 0.3);
  EXPECT_NEAR(f.x_min, -0.745, 5e-4);
  EXPECT_DOUBLE_EQ(f.x_max, 0.5);
  EXPECT_DOUBLE_EQ(f.y_min, 0.0);
  EXPECT_DOUBLE_EQ(f.y_max, 1.0);
  ASSERT_EQ(f.cuts.size(), 2u);
  EXPECT_EQ(f.cuts[0].q, Quadrant::SW);
  EXPECT_DOUBLE_EQ(f.cuts[0].x, -0.5);
  EXPECT_DOUBLE_EQ(f.cuts[0].y, 0.7);
  EXPECT_EQ(f.cuts[1].q, Quadrant::SE);
  EXPECT_NEAR(f.cuts[1].x, 0.255, 5e-4);
  EXPECT_DOUBLE_EQ(f.cuts[1].y, 0.3);
  EXPECT_NEAR(f.area(), 1.0, 1e-12);
}

TEST(BuildDomain, RegionIIInstance) {
  const RectilinearDomain f = fundamental_domain({-0.9, 0.3}, 0.3);
  EXPECT_NEAR(f.x_min, -0.728, 5e-4);
  EXPECT_DOUBLE_EQ(f.y_min, -0.3);
  EXPECT_DOUBLE_EQ(f.y_max, 1.0);
  ASSERT_EQ(f.cuts.size(), 2u);
  EXPECT_EQ(f.cuts[1].q, Quadrant::SE);
  EXPECT_NEAR(f.cuts[1].x, 0.172, 5e-4);
  EXPECT_DOUBLE_EQ(f.cuts[1].y, 0.0);
  EXPECT_NEAR(f.area(), 1.27, 1e-12);
}

TEST(BuildDomain, RegionIIIInstance) {
  const RectilinearDomain f = fundamental_domain({-0.5, 0.05}, 0.4);
  EXPECT_DOUBLE_EQ(f.x_min, -0.5);
  EXPECT_DOUBLE_EQ(f.x_max, 0.5);
  EXPECT_DOUBLE_EQ(f.y_min, -1.0);
  EXPECT_DOUBLE_EQ(f.y_max, 1.0);
  ASSERT_EQ(f.cuts.size(), 4u);
  EXPECT_NEAR(f.cuts[0].x, -0.346, 5e-4);  // NW at kappa(a)
  EXPECT_NEAR(f.cuts[1].x, 0.346, 5e-4);   // NE at kappa(abar + 1)
  EXPECT_NEAR(f.cuts[2].x, -0.154, 5e-4);  // SW at kappa(-a - 1)
  EXPECT_NEAR(f.cuts[3].x, 0.154, 5e-4);   // SE at kappa(-abar)
  EXPECT_NEAR(f.area(), 1.2, 1e-12);
}

TEST(BuildDomain, DegenerateInputsRejected) {
  EXPECT_THROW(fundamental_domain({0.0, 0.3}, 0.0), std::domain_error);
  EXPECT_THROW(fundamental_domain({0.0, 0.3}, 1.0), std::domain_error);
  EXPECT_THROW(fundamental_domain({0.0, 0.0}, 0.3), std::domain_error);
  EXPECT_THROW(fundamental_domain({0.3, 0.954}, 0.3), std::domain_error);  // |a| > 1
}

TEST(Contains, HalfOpenBrackets) {
  const RectilinearDomain f = fundamental_domain({-0.9, 0.3}, 0.3);
  EXPECT_TRUE(f.contains(0.0, 0.0));
  EXPECT_FALSE(f.contains(0.3, -0.2));  // inside the SE cut
  EXPECT_FALSE(f.contains(5.0, 0.0));
  EXPECT_FALSE(f.contains(0.0, 2.0));
  // Cut boundaries stay in the domain per the bracket conventions: the SE cut
  // is open on its left edge and half-open below y = 0.
  const double xe = f.cuts[1].x;
  EXPECT_TRUE(f.contains(xe, -0.2));       // x == cut.x is not "x > cut.x"
  EXPECT_TRUE(f.contains(xe + 0.01, 0.0)); // y == cut.y is not "y < cut.y"
}

TEST(Area, MatchesFormulaEverywhere) {
  Xoshiro256pp rng(21);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const ParamPoint a = draw_point(rng);
    const double b = uniform(rng, 1e-6, 1.0 - 1e-6);
    const RectilinearDomain f = fundamental_domain(a, b);
    worst = std::max(worst, std::abs(f.area() - (1.0 - a.a1 * b)));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Area, StripDecompositionAgrees) {
  Xoshiro256pp rng(22);
  for (int i = 0; i < 2000; ++i) {
    const ParamPoint a = draw_point(rng);
    const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
    const RectilinearDomain f = fundamental_domain(a, b);
    double strip_area = 0.0;
    for (const Rect& r : f.strips()) strip_area += r.width() * r.height();
    EXPECT_NEAR(strip_area, f.area(), 1e-12);
  }
}

TEST(EdgeRows, TableStructure) {
  {
    const auto rows = edge_rows({0.0, 0.3}, 0.3);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_DOUBLE_EQ(rows[0].c3, 1.0);
    EXPECT_EQ(rows[0].sign, -1);
    EXPECT_DOUBLE_EQ(rows[1].c3, 0.7);
    EXPECT_EQ(rows[1].sign, +1);
    EXPECT_DOUBLE_EQ(rows[2].c3, 0.3);
    EXPECT_EQ(rows[2].sign, +1);
  }
  {
    const auto rows = edge_rows({-0.5, 0.05}, 0.4);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_DOUBLE_EQ(rows[0].c3, 1.0);
    EXPECT_DOUBLE_EQ(rows[1].c3, 0.4);
    EXPECT_DOUBLE_EQ(rows[2].c3, -0.4);
    EXPECT_DOUBLE_EQ(rows[3].c3, -1.0);
    EXPECT_EQ(rows[0].sign, -1);
    EXPECT_EQ(rows[1].sign, -1);
    EXPECT_EQ(rows[2].sign, +1);
    EXPECT_EQ(rows[3].sign, +1);
  }
}

TEST(EdgeRows, OrderedAndMatchingDomainEdges) {
  Xoshiro256pp rng(23);
  for (int i = 0; i < 1000; ++i) {
    const ParamPoint a = draw_point(rng);
    const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
    const RectilinearDomain f = fundamental_domain(a, b);
    std::set<double> edges{f.x_min, f.x_max};
    for (const auto& c : f.cuts) edges.insert(c.x);
    std::set<double> abscissas;
    for (const auto& r : edge_rows(a, b)) {
      EXPECT_LT(tau_of_c1(r.c1_minus), tau_of_c1(r.c1_plus));
      abscissas.insert(r.c1_minus);
      abscissas.insert(r.c1_plus);
    }
    EXPECT_EQ(abscissas, edges);
  }
}

TEST(Tiling, HoldsWithPlusA1Convention) {
  for (const auto& inst : canonical_instances())
    EXPECT_TRUE(tiling_check(inst.a, inst.b, 1000, 99, true));
  Xoshiro256pp rng(24);
  for (int i = 0; i < 60; ++i) {
    const ParamPoint a =
        verify_detail::random_point_in_region(rng, static_cast<Region>(i % 3));
    const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
    EXPECT_TRUE(tiling_check(a, b, 300, 1000 + i, true))
        << "a=(" << a.a1 << "," << a.a2 << ") b=" << b;
  }
}

TEST(Tiling, FailsWithMinusA1Convention) {
  // The opposite sign convention must not tile (unless a1 ~ 0 makes the two
  // lattices nearly identical).
  int failures = 0;
  Xoshiro256pp rng(25);
  for (int i = 0; i < 20; ++i) {
    const ParamPoint a =
        verify_detail::random_point_in_region(rng, static_cast<Region>(i % 3));
    if (std::abs(a.a1) < 0.05) continue;
    const double b = uniform(rng, 0.2, 0.8);
    if (!tiling_check(a, b, 300, 2000 + i, false)) ++failures;
  }
  EXPECT_GT(failures, 0);
}

TEST(Tiling, DetectsCorruptedDomain) {
  // Perturbing a cut width must break the tiling.
  const ParamPoint a{-0.9, 0.3};
  const double b = 0.3;
  RectilinearDomain f = fundamental_domain(a, b);
  EXPECT_TRUE(tiling_check_domain(f, a, b, 2000, 26));
  f.cuts[1].x += 0.01;
  EXPECT_FALSE(tiling_check_domain(f, a, b, 2000, 26));
}

// Membership in F describes the floor layer of the admissible w region: a w
// sampled just below the sheet floor is blocked by some translated cylinder
// exactly when its (c1, c3) column leaves F. Points inside F must stay clean
// at EVERY depth (the measure integrates the whole c2 tail); points outside F
// are only guaranteed blocked near the floor, within the |c3| <= 1 band where
// the unit cylinder's own surface carries the boundary patch, and away from
// the walls (the blocking cap thins out towards a wall crossing).
TEST(LatticeOracle, CleanInsideAtAnyDepth) {
  Xoshiro256pp rng(27);
  int tested = 0;
  while (tested < 600) {
    const ParamPoint a = draw_point(rng);
    const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
    const RectilinearDomain f = fundamental_domain(a, b);
    const auto [c1, c3] = verify_detail::random_point_in_domain(rng, f);
    if (robust_contains(f, c1, c3) <= 0) continue;
    const double delta = uniform(rng, 1e-6, 1.0);
    const double c2 = -(std::sqrt(1.0 - c1 * c1) + delta);
    EXPECT_TRUE(lattice_membership_oracle(a, b, c1, c2, c3))
        << "a=(" << a.a1 << "," << a.a2 << ") b=" << b << " c=(" << c1 << ","
        << c3 << ") delta=" << delta;
    ++tested;
  }
}

TEST(LatticeOracle, BlockedOutsideNearFloor) {
  Xoshiro256pp rng(127);
  int tested_out = 0, tested_in = 0;
  while (tested_out < 400 || tested_in < 400) {
    const ParamPoint a = draw_point(rng);
    const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
    const RectilinearDomain f = fundamental_domain(a, b);
    const double c1 = uniform(rng, -0.999, 0.999);
    const double c3 = uniform(rng, std::max(-0.95, f.y_min + 0.05),
                              std::min(0.95, f.y_max - 0.05));
    const int rc = robust_contains(f, c1, c3, 0.05);
    if (rc == 0) continue;
    if (rc > 0 && tested_in >= 400) continue;
    if (rc < 0 && tested_out >= 400) continue;
    const double delta = uniform(rng, 1e-6, 1e-3);
    const double c2 = -(std::sqrt(1.0 - c1 * c1) + delta);
    EXPECT_EQ(lattice_membership_oracle(a, b, c1, c2, c3), rc > 0)
        << "a=(" << a.a1 << "," << a.a2 << ") b=" << b << " c=(" << c1 << ","
        << c3 << ") delta=" << delta;
    (rc > 0 ? tested_in : tested_out) += 1;
  }
}

TEST(LatticeOracle, ShearInvariance) {
  // Replacing w by w - u - v leaves the lattice unchanged, so the verdict
  // must not move. Shifts that leave the admissible sheet (the oracle's
  // precondition) are skipped.
  Xoshiro256pp rng(28);
  int tested = 0;
  while (tested < 200) {
    const ParamPoint a = draw_point(rng);
    const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
    const RectilinearDomain f = fundamental_domain(a, b);
    const auto [c1, c3] = verify_detail::random_point_in_domain(rng, f);
    const double c2 = -(std::sqrt(1.0 - c1 * c1) + 0.01);
    const double c1s = c1 - 1.0 - a.a1;
    const double c2s = c2 - a.a2;
    if (!(-c2s > std::sqrt(std::max(0.0, 1.0 - c1s * c1s)))) continue;
    const bool base = lattice_membership_oracle(a, b, c1, c2, c3, 4);
    const bool sheared = lattice_membership_oracle(a, b, c1s, c2s, c3 - b - 1.0, 4);
    EXPECT_EQ(base, sheared);
    ++tested;
  }
}

TEST(LatticeOracle, BoundThreeSuffices) {
  Xoshiro256pp rng(29);
  for (int i = 0; i < 300; ++i) {
    const ParamPoint a = draw_point(rng);
    const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
    const RectilinearDomain f = fundamental_domain(a, b);
    const double c1 = uniform(rng, -1.0, 1.0);
    const double c3 = uniform(rng, -1.5, 1.5);
    if (robust_contains(f, c1, c3) == 0) continue;
    const double c2 = -(std::sqrt(1.0 - c1 * c1) + uniform(rng, 1e-6, 0.02));
    EXPECT_EQ(lattice_membership_oracle(a, b, c1, c2, c3, 3),
              lattice_membership_oracle(a, b, c1, c2, c3, 5));
  }
}

TEST(Boundary, WalkIsClosedRectilinearPolygon) {
  Xoshiro256pp rng(30);
  for (int i = 0; i < 200; ++i) {
    const ParamPoint a = draw_point(rng);
    const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
    const RectilinearDomain f = fundamental_domain(a, b);
    const auto poly = f.boundary_vertices();
    ASSERT_GE(poly.size(), 4u);
    double area2 = 0.0;  // shoelace
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const auto& p = poly[k];
      const auto& q = poly[(k + 1) % poly.size()];
      EXPECT_TRUE(p[0] == q[0] || p[1] == q[1]);  // axis-aligned edges
      area2 += p[0] * q[1] - q[0] * p[1];
    }
    EXPECT_NEAR(0.5 * area2, f.area(), 1e-12);  // counterclockwise
  }
}
