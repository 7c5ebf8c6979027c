#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "levy2d/fundamental_domain.hpp"
#include "levy2d/integrand.hpp"
#include "levy2d/parallel.hpp"
#include "levy2d/rng.hpp"

namespace levy2d {

struct McEstimate {
  double mean = 0.0;    // estimate of mu_S (not 3*mu_S)
  double stderr_ = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  long long accepted = 0;
  bool degenerate = false;  // no sample accepted
};

// Closed form of the c2 tail integral over the admissible sheet,
// int_{sqrt(1-c1^2)}^inf dc2 / ((1-a1*b)*c2 - a2*(b*c1 - c3))^3
//   = 1 / (2*(1 - a1*b) * Xi^2).
inline double c2_tail_integral(ParamPoint a, double b, double c1, double c3) {
  const double v = xi(a, b, c1, c3);
  if (!(v > 0.0))
    throw std::domain_error("c2_tail_integral: Xi <= 0 (point outside F?)");
  return 1.0 / (2.0 * (1.0 - a.a1 * b) * v * v);
}

namespace detail {

struct BlockSums {
  double sum = 0.0;
  double sumsq = 0.0;
  long long accepted = 0;
};

// Sampling box for (a1, a2, b, c1, c3). The c3 margin is deliberately wider
// than any fundamental domain; correctness does not depend on it.
inline constexpr double kBox[5][2] = {
    {-1.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}, {-1.0, 1.0}, {-1.5, 1.5}};
inline constexpr double kBoxVolume = 2.0 * 1.0 * 1.0 * 2.0 * 3.0;

// Value of one sample (already includes the 4*pi/3 density factor), or 0 when
// the sample misses the acceptance region.
inline double mc_sample_value(Xoshiro256pp& rng) {
  const double a1 = uniform(rng, kBox[0][0], kBox[0][1]);
  const double a2 = uniform(rng, kBox[1][0], kBox[1][1]);
  const double b = uniform(rng, kBox[2][0], kBox[2][1]);
  const double c1 = uniform(rng, kBox[3][0], kBox[3][1]);
  const double c3 = uniform(rng, kBox[4][0], kBox[4][1]);
  const ParamPoint a{a1, a2};
  if (!(a2 > 0.0) || !(b > 0.0 && b < 1.0)) return 0.0;
  const double d0 = a1 * a1 + a2 * a2;
  if (!(d0 > 0.0 && d0 < 1.0)) return 0.0;
  if (!((a1 - 1.0) * (a1 - 1.0) + a2 * a2 > 1.0)) return 0.0;
  const RectilinearDomain f = fundamental_domain(a, b);
  if (!f.contains(c1, c3)) return 0.0;
  return (4.0 * std::numbers::pi / 3.0) * c2_tail_integral(a, b, c1, c3);
}

}  // namespace detail

// Plain Monte Carlo estimate of mu_S over the 7-parameter domain, using the
// analytic c2 integral and the fundamental-domain membership test. Blocks of
// 2^20 samples carry derived seeds and are merged in index order, so the
// result depends only on (seed, samples), not on the thread count.
inline McEstimate estimate_mu7(long long samples, std::uint64_t seed,
                               unsigned threads = 1) {
  if (samples < 2) throw std::domain_error("estimate_mu7: need at least 2 samples");
  constexpr long long kBlock = 1 << 20;
  const long long n_blocks = (samples + kBlock - 1) / kBlock;
  std::vector<detail::BlockSums> blocks(static_cast<std::size_t>(n_blocks));
  parallel_for(static_cast<std::size_t>(n_blocks), threads, [&](std::size_t bi) {
    Xoshiro256pp rng = derived_stream(seed, bi);
    const long long lo = static_cast<long long>(bi) * kBlock;
    const long long hi = std::min(samples, lo + kBlock);
    detail::BlockSums s;
    for (long long i = lo; i < hi; ++i) {
      const double v = detail::mc_sample_value(rng);
      if (v != 0.0) {
        s.sum += v;
        s.sumsq += v * v;
        ++s.accepted;
      }
    }
    blocks[bi] = s;
  });
  double sum = 0.0, sumsq = 0.0;
  long long accepted = 0;
  for (const auto& s : blocks) {
    sum += s.sum;
    sumsq += s.sumsq;
    accepted += s.accepted;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sumsq / n - mean * mean) * n / (n - 1.0));
  McEstimate e;
  e.mean = detail::kBoxVolume * mean;
  e.stderr_ = detail::kBoxVolume * std::sqrt(var / n);
  e.samples = samples;
  e.seed = seed;
  e.accepted = accepted;
  e.degenerate = accepted == 0;
  return e;
}

// Stratified variant: the a-plane part of the sampling box is partitioned
// into region-aligned cells (the low strip holding region III, the bulk
// above it, and the a1 > 0 wedge), each split again at b = 1/2. The quarter
// a1 >= 1/2 is dropped outright: the base domain forces a1 <= |a|^2/2 < 1/2.
// Proportional allocation; same estimand as the plain estimator.
inline McEstimate estimate_mu7_stratified(long long samples, std::uint64_t seed,
                                          unsigned threads = 1) {
  if (samples < 12) throw std::domain_error("estimate_mu7_stratified: too few samples");
  struct Cell {
    double a1_lo, a1_hi, a2_lo, a2_hi, b_lo, b_hi;
  };
  const double lid = 1.0 - std::sqrt(3.0) / 2.0 + 1e-12;  // top of region III
  const Cell cells[6] = {
      {-1.0, 0.0, 0.0, lid, 0.0, 0.5}, {-1.0, 0.0, 0.0, lid, 0.5, 1.0},
      {-1.0, 0.0, lid, 1.0, 0.0, 0.5}, {-1.0, 0.0, lid, 1.0, 0.5, 1.0},
      {0.0, 0.5, 0.0, 1.0, 0.0, 0.5},  {0.0, 0.5, 0.0, 1.0, 0.5, 1.0},
  };
  double vol_total = 0.0;
  double vols[6];
  for (int i = 0; i < 6; ++i) {
    const auto& c = cells[i];
    vols[i] = (c.a1_hi - c.a1_lo) * (c.a2_hi - c.a2_lo) * (c.b_hi - c.b_lo) *
              2.0 * 3.0;  // c1 in [-1,1], c3 in [-1.5,1.5]
    vol_total += vols[i];
  }
  double mean_total = 0.0, var_total = 0.0;
  long long accepted = 0, used_total = 0;
  for (int i = 0; i < 6; ++i) {
    const auto& cell = cells[i];
    const long long ns =
        std::max<long long>(2, static_cast<long long>(samples * vols[i] / vol_total));
    Xoshiro256pp rng = derived_stream(seed ^ (0xABCD0000ULL + i), 0);
    detail::BlockSums s;
    for (long long k = 0; k < ns; ++k) {
      const double a1 = uniform(rng, cell.a1_lo, cell.a1_hi);
      const double a2 = uniform(rng, cell.a2_lo, cell.a2_hi);
      const double b = uniform(rng, cell.b_lo, cell.b_hi);
      const double c1 = uniform(rng, -1.0, 1.0);
      const double c3 = uniform(rng, -1.5, 1.5);
      const ParamPoint a{a1, a2};
      double v = 0.0;
      const double d0 = a1 * a1 + a2 * a2;
      if (a2 > 0.0 && b > 0.0 && b < 1.0 && d0 > 0.0 && d0 < 1.0 &&
          (a1 - 1.0) * (a1 - 1.0) + a2 * a2 > 1.0) {
        const RectilinearDomain f = fundamental_domain(a, b);
        if (f.contains(c1, c3))
          v = (4.0 * std::numbers::pi / 3.0) * c2_tail_integral(a, b, c1, c3);
      }
      if (v != 0.0) {
        s.sum += v;
        s.sumsq += v * v;
        ++s.accepted;
      }
    }
    const double n = static_cast<double>(ns);
    const double mean = s.sum / n;
    const double var = std::max(0.0, (s.sumsq / n - mean * mean) * n / (n - 1.0));
    mean_total += vols[i] * mean;
    var_total += vols[i] * vols[i] * var / n;
    accepted += s.accepted;
    used_total += ns;
  }
  (void)threads;
  McEstimate e;
  e.mean = mean_total;
  e.stderr_ = std::sqrt(var_total);
  e.samples = used_total;
  e.seed = seed;
  e.accepted = accepted;
  e.degenerate = accepted == 0;
  return e;
}

}  // namespace levy2d
