#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "levy2d/diophantine.hpp"
#include "levy2d/fundamental_domain.hpp"
#include "levy2d/geometry.hpp"
#include "levy2d/integrand.hpp"
#include "levy2d/montecarlo.hpp"
#include "levy2d/quadrature.hpp"
#include "levy2d/rng.hpp"

namespace levy2d {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

enum class VerifyLevel { Quick, Full };

inline std::uint64_t splitmix_of(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t s = seed + 0x9E3779B97F4A7C15ULL * (i + 1);
  return splitmix64(s);
}

namespace verify_detail {

inline std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

// Uniform sample from the open upper base domain by rejection.
inline ParamPoint random_base_point(Xoshiro256pp& rng) {
  while (true) {
    const ParamPoint a{uniform(rng, -1.0, 1.0), uniform01(rng)};
    if (a.a2 > 1e-12 && in_base_domain_upper(a) &&
        (a.a1 - 1.0) * (a.a1 - 1.0) + a.a2 * a.a2 > 1.0 && norm2(a) > 1e-12)
      return a;
  }
}

inline ParamPoint random_point_in_region(Xoshiro256pp& rng, Region r) {
  while (true) {
    const ParamPoint a = random_base_point(rng);
    if (classify_region(a) == r) return a;
  }
}

// Uniform point of F(a, b) by rejection from the bounding rectangle.
inline std::pair<double, double> random_point_in_domain(Xoshiro256pp& rng,
                                                        const RectilinearDomain& f) {
  while (true) {
    const double x = uniform(rng, f.x_min, f.x_max);
    const double y = uniform(rng, f.y_min, f.y_max);
    if (f.contains(x, y)) return {x, y};
  }
}

// Closed-form law for the overlapping-translate pairs, validated against the
// brute-force enumerator: four unconditional pairs plus up to three
// conditional ones.
inline std::vector<std::pair<int, int>> predicted_overlap_pairs(ParamPoint a,
                                                                double b) {
  std::vector<std::pair<int, int>> base = {{1, 0}, {0, 1}, {1, 1}, {-1, 1}};
  if ((2.0 * a.a1 - 1.0) * (2.0 * a.a1 - 1.0) + 4.0 * a.a2 * a.a2 < 4.0 && b > 0.0)
    base.push_back({-1, 2});
  if ((2.0 - a.a1) * (2.0 - a.a1) + a.a2 * a.a2 < 4.0) base.push_back({2, -1});
  if ((2.0 + a.a1) * (2.0 + a.a1) + a.a2 * a.a2 < 4.0 && b < 0.5)
    base.push_back({2, 1});
  std::vector<std::pair<int, int>> out;
  for (auto [m, n] : base) {
    out.emplace_back(m, n);
    out.emplace_back(-m, -n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace verify_detail

// The three documented fundamental-domain instances used throughout the test
// surface: one per region.
struct DomainInstance {
  ParamPoint a;
  double b;
};
inline const std::vector<DomainInstance>& canonical_instances() {
  static const std::vector<DomainInstance> v = {
      {{0.0, 0.3}, 0.3}, {{-0.9, 0.3}, 0.3}, {{-0.5, 0.05}, 0.4}};
  return v;
}

// Geometry and domain property suite (criterion-5 scale when full).
inline std::vector<CheckResult> verify_geometry(VerifyLevel level,
                                                std::uint64_t seed = 20260808) {
  using namespace verify_detail;
  const bool full = level == VerifyLevel::Full;
  std::vector<CheckResult> out;
  Xoshiro256pp rng(seed);

  {  // chi lies on both circles
    const int n = full ? 10'000 : 2'000;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const ParamPoint a = random_base_point(rng);
      for (int s : {+1, -1}) {
        const ParamPoint z = chi(a, s);
        worst = std::max(worst, std::abs(norm(z) - 1.0));
        worst = std::max(worst,
                         std::abs(norm({z.a1 - a.a1, z.a2 - a.a2}) - 1.0));
      }
    }
    out.push_back({"chi_on_both_circles", worst < 1e-12,
                   fmt("max deviation %.3g", worst)});
  }

  {  // kappa against the documented tick coordinates
    struct Tick {
      ParamPoint z;
      double want;
    };
    const std::vector<Tick> ticks = {
        {{-1.0, 0.3}, -0.745},  {{1.0, 0.3}, 0.255},  {{-0.9, 0.3}, -0.728},
        {{0.9, 0.3}, 0.172},    {{-0.5, 0.05}, -0.346}, {{0.5, -0.05}, 0.346},
        {{-0.5, -0.05}, -0.154}, {{0.5, 0.05}, 0.154}};
    double worst = 0.0;
    for (const auto& t : ticks) worst = std::max(worst, std::abs(kappa(t.z) - t.want));
    out.push_back({"kappa_reference_ticks", worst < 5e-4,
                   fmt("max |kappa - tick| %.3g", worst)});
  }

  {  // tau closed form matches tau(kappa(a)); skip the removable 0/0 line
    const int n = full ? 1'000 : 300;
    double worst = 0.0;
    int used = 0;
    while (used < n) {
      const ParamPoint a = random_base_point(rng);
      const double sgn = a.a1 >= 0.0 ? 1.0 : -1.0;
      if (std::abs(norm2(a) + sgn * 2.0 * a.a2) < 1e-3) continue;
      worst = std::max(worst, std::abs(tau_of_a(a) - tau_of_c1(kappa(a))));
      ++used;
    }
    out.push_back({"tau_closed_form_identity", worst < 1e-12,
                   fmt("max deviation %.3g", worst)});
  }

  {  // tau_of_c1 round trip and monotonicity
    double worst = 0.0;
    bool monotone = true;
    double prev = -1.1;
    for (int i = 0; i <= 2000; ++i) {
      const double tau = -1.0 + 2.0 * i / 2000.0;
      const double c1 = 2.0 * tau / (1.0 + tau * tau);
      worst = std::max(worst, std::abs(tau_of_c1(c1) - tau));
      const double t = tau_of_c1(-1.0 + 2.0 * i / 2000.0);
      if (t <= prev) monotone = false;
      prev = t;
    }
    out.push_back({"tau_round_trip_monotone", worst < 1e-12 && monotone,
                   fmt("max round-trip deviation %.3g", worst)});
  }

  {  // region partition on a grid
    bool ok = true;
    for (int i = -200; i <= 200 && ok; ++i)
      for (int j = 1; j <= 200; ++j) {
        const ParamPoint a{i / 200.0, j / 200.0};
        if (!in_base_domain_upper(a)) continue;
        classify_region(a);  // throws on failure
        const ParamPoint xi6 = sixth_root();
        const bool in1 =
            (a.a1 - xi6.a1) * (a.a1 - xi6.a1) + (a.a2 - xi6.a2) * (a.a2 - xi6.a2) < 1.0;
        const bool in3 =
            (a.a1 + xi6.a1) * (a.a1 + xi6.a1) + (a.a2 + xi6.a2) * (a.a2 + xi6.a2) < 1.0;
        const Region r = classify_region(a);
        const int labels = (r == Region::I) + (r == Region::II) + (r == Region::III);
        if (labels != 1 || (in1 && r != Region::I) || (in3 && r != Region::III) ||
            (!in1 && !in3 && r != Region::II))
          ok = false;
      }
    out.push_back({"region_partition", ok, "one label per grid point"});
  }

  {  // area identity area(F) = 1 - a1*b
    const int n = full ? 10'000 : 1'000;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const ParamPoint a = random_base_point(rng);
      const double b = uniform(rng, 1e-6, 1.0 - 1e-6);
      const RectilinearDomain f = fundamental_domain(a, b);
      worst = std::max(worst, std::abs(f.area() - (1.0 - a.a1 * b)));
    }
    out.push_back({"area_identity", worst < 1e-12, fmt("max |area-(1-a1 b)| %.3g", worst)});
  }

  {  // width identities behind the area formula
    const int n = full ? 2'000 : 500;
    double worst2 = 0.0, worst3 = 0.0;
    for (int i = 0; i < n; ++i) {
      const ParamPoint a2 = random_point_in_region(rng, Region::II);
      worst2 = std::max(worst2,
                        std::abs(kappa({-a2.a1, a2.a2}) - kappa(a2) + a2.a1));
      const ParamPoint a3 = random_point_in_region(rng, Region::III);
      const double lhs = (kappa(a3) + 0.5) + (0.5 - kappa({a3.a1 + 1.0, -a3.a2}));
      const double rhs = kappa({-a3.a1, a3.a2}) - kappa({-a3.a1 - 1.0, -a3.a2});
      worst3 = std::max(worst3, std::abs(lhs - rhs));
    }
    out.push_back({"width_identities", worst2 < 1e-12 && worst3 < 1e-12,
                   fmt("II %.3g, III %.3g", worst2, worst3)});
  }

  {  // tiling of the plane by F(a, b)
    const int inst = full ? 300 : 30;
    const int pts = full ? 1'000 : 200;
    bool ok = true;
    for (int i = 0; i < inst && ok; ++i) {
      const ParamPoint a = random_point_in_region(
          rng, static_cast<Region>(i % 3));
      const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
      ok = tiling_check(a, b, pts, splitmix_of(seed, i));
    }
    out.push_back({"tiling_check", ok, "exactly one covering translate"});
  }

  {  // overlap law vs brute force
    const int n = full ? 1'000 : 100;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const ParamPoint a = random_base_point(rng);
      const double b = uniform(rng, 1e-6, 1.0 - 1e-6);
      ok = enumerate_overlapping_translates(a, b, 4) == predicted_overlap_pairs(a, b);
    }
    out.push_back({"overlap_pairs_law", ok, "closed form == brute force (bound 4)"});
  }

  {  // membership equivalence against the lattice oracle: inside F the
     // lattice is clean at any depth; outside F (well clear of the walls,
     // |c3| below the cylinder rim) it is blocked near the sheet floor.
    const int n = full ? 1'000 : 100;
    bool ok = true;
    int tested = 0;
    while (tested < n && ok) {
      const ParamPoint a = random_base_point(rng);
      const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
      const RectilinearDomain f = fundamental_domain(a, b);
      if (tested % 2 == 0) {
        const auto [c1, c3] = random_point_in_domain(rng, f);
        if (robust_contains(f, c1, c3) <= 0) continue;
        const double c2 = -(std::sqrt(1.0 - c1 * c1) + uniform(rng, 1e-6, 1.0));
        ok = lattice_membership_oracle(a, b, c1, c2, c3);
      } else {
        const double c1 = uniform(rng, -0.999, 0.999);
        const double c3 = uniform(rng, std::max(-0.95, f.y_min + 0.05),
                                  std::min(0.95, f.y_max - 0.05));
        const int rc = robust_contains(f, c1, c3, 0.05);
        if (rc == 0) continue;
        const double c2 = -(std::sqrt(1.0 - c1 * c1) + uniform(rng, 1e-6, 1e-3));
        ok = lattice_membership_oracle(a, b, c1, c2, c3) == (rc > 0);
      }
      ++tested;
    }
    out.push_back({"membership_vs_lattice_oracle", ok, "contains <=> only +-u,+-v short"});
  }

  {  // edge-row abscissas match the vertical edges of F
    const int n = full ? 1'000 : 200;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const ParamPoint a = random_base_point(rng);
      const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
      const RectilinearDomain f = fundamental_domain(a, b);
      std::set<double> edges{f.x_min, f.x_max};
      for (const auto& c : f.cuts) edges.insert(c.x);
      std::set<double> rows;
      for (const auto& r : edge_rows(a, b)) {
        rows.insert(r.c1_minus);
        rows.insert(r.c1_plus);
        if (!(tau_of_c1(r.c1_minus) < tau_of_c1(r.c1_plus))) ok = false;
      }
      if (rows != edges) ok = false;
    }
    out.push_back({"edge_rows_match_domain", ok, "abscissa sets equal, rows ordered"});
  }

  {  // Xi > 1/24 on domain samples
    const long long n = full ? 100'000 : 10'000;
    double lo = 1e9;
    for (long long i = 0; i < n; ++i) {
      const ParamPoint a = random_base_point(rng);
      const double b = uniform(rng, 1e-6, 1.0 - 1e-6);
      const RectilinearDomain f = fundamental_domain(a, b);
      const auto [c1, c3] = random_point_in_domain(rng, f);
      lo = std::min(lo, xi(a, b, c1, c3));
    }
    out.push_back({"xi_lower_bound", lo > 1.0 / 24.0, fmt("min Xi %.6f", lo)});
  }

  {  // sqrt(D) + a2*b + phi_minus*tau > 0 on domain points (the positivity
     // needs Xi > 0, i.e. (c1, c3) in F; free (c3, tau) combinations violate
     // it), plus the factorization identity, which is unconditional.
    const long long n = full ? 100'000 : 10'000;
    double lo = 1e9, quad_lo = 1e9, worst = 0.0;
    for (long long i = 0; i < n; ++i) {
      const ParamPoint a = random_base_point(rng);
      const double b = uniform(rng, 1e-6, 1.0 - 1e-6);
      const RectilinearDomain f = fundamental_domain(a, b);
      const auto [c1, c3] = random_point_in_domain(rng, f);
      const double tau = tau_of_c1(c1);
      const double a1b = 1.0 - a.a1 * b;
      const double phi_p = a1b + a.a2 * c3;
      const double phi_m = a1b - a.a2 * c3;
      const double d = a1b * a1b + a.a2 * a.a2 * (b * b - c3 * c3);
      if (d < 0.0) {
        lo = -1e9;
        break;
      }
      lo = std::min(lo, std::sqrt(d) + a.a2 * b + phi_m * tau);
      quad_lo = std::min(quad_lo, phi_p - 2.0 * a.a2 * b * tau - phi_m * tau * tau);
      const double lhs = (phi_p - 2.0 * a.a2 * b * tau - phi_m * tau * tau) * phi_m;
      const double rhs = (std::sqrt(d) + a.a2 * b + phi_m * tau) *
                         (std::sqrt(d) - a.a2 * b - phi_m * tau);
      worst = std::max(worst, std::abs(lhs - rhs) /
                                  std::max(1.0, std::max(std::abs(lhs), std::abs(rhs))));
    }
    out.push_back({"sqrtD_positivity_and_factorization",
                   lo > 0.0 && quad_lo > 0.0 && worst < 1e-10,
                   fmt("min %.4g, factor dev %.3g", lo, worst)});
  }

  {  // D lower bound a2^2 (1/|a|^2 - 1)
    const long long n = full ? 100'000 : 10'000;
    bool ok = true;
    for (long long i = 0; i < n && ok; ++i) {
      const ParamPoint a = random_base_point(rng);
      const double b = uniform01(rng);
      const double c3 = uniform(rng, -1.0, 1.0);
      const double a1b = 1.0 - a.a1 * b;
      const double d = a1b * a1b + a.a2 * a.a2 * (b * b - c3 * c3);
      ok = d >= a.a2 * a.a2 * (1.0 / norm2(a) - 1.0) - 1e-12;
    }
    out.push_back({"D_lower_bound", ok, "D >= a2^2 (1/|a|^2 - 1)"});
  }

  return out;
}

// Green's-theorem reduction: closed form vs direct 2D quadrature of the
// slice integral (criterion-4 scale when full).
inline std::vector<CheckResult> verify_inner_reduction(VerifyLevel level,
                                                       std::uint64_t seed = 31337) {
  using namespace verify_detail;
  const bool full = level == VerifyLevel::Full;
  std::vector<CheckResult> out;
  Xoshiro256pp rng(seed);
  double worst = 0.0;
  bool ok = true;
  const double oracle_tol = full ? 1e-8 : 1e-7;
  const double gate = 1e-6;
  for (const auto& inst : canonical_instances()) {
    const double lhs = inner_integrand(inst.a, inst.b);
    const double rhs = inner_oracle(inst.a, inst.b, oracle_tol);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  const int per_region = full ? 100 : 5;
  for (int r = 0; r < 3 && ok; ++r)
    for (int i = 0; i < per_region; ++i) {
      const ParamPoint a = random_point_in_region(rng, static_cast<Region>(r));
      const double b = uniform(rng, 1e-3, 1.0 - 1e-3);
      const double lhs = inner_integrand(a, b);
      const double rhs = inner_oracle(a, b, oracle_tol);
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
      if (!(worst < gate)) {
        ok = false;
        break;
      }
    }
  out.push_back({"inner_reduction_equivalence", ok && worst < gate,
                 fmt("max relative gap %.3g", worst)});
  return out;
}

// Monte Carlo cross-check of the quadrature (full: criterion-3 scale).
inline std::vector<CheckResult> verify_mc_vs_quadrature(VerifyLevel level,
                                                        unsigned threads = 1,
                                                        std::uint64_t seed = 777) {
  using namespace verify_detail;
  const bool full = level == VerifyLevel::Full;
  const long long samples = full ? 100'000'000 : 1'000'000;
  const double tol = full ? 1e-5 : 1e-3;
  const QuadratureResult q = integrate_outer(tol, 400'000'000, threads);
  const McEstimate mc = estimate_mu7(samples, seed, threads);
  const double diff = std::abs(3.0 * mc.mean - q.value);
  const double band = 3.0 * 3.0 * mc.stderr_;
  std::vector<CheckResult> out;
  out.push_back({"mc_vs_quadrature",
                 diff <= band && !mc.degenerate,
                 verify_detail::fmt("|3*mc - quad| = %.3g, 3 sigma band %.3g", diff, band)});
  return out;
}

inline std::vector<CheckResult> run_verify(VerifyLevel level, unsigned threads = 1) {
  std::vector<CheckResult> out;
  for (auto&& c : verify_geometry(level)) out.push_back(std::move(c));
  for (auto&& c : verify_inner_reduction(level)) out.push_back(std::move(c));
  for (auto&& c : verify_mc_vs_quadrature(level, threads)) out.push_back(std::move(c));
  return out;
}

}  // namespace levy2d
