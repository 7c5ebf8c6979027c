#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "levy2d/parallel.hpp"
#include "levy2d/rng.hpp"

namespace levy2d {

// One best-approximation record: denominator q, nearest integer vector p and
// the Euclidean distance ||q*theta - p||.
struct BestApproxRecord {
  long long q;
  std::array<long long, 2> p;
  double dist;
};

struct LevyEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long long thetas = 0;
  long long q_max = 0;
  int burn_in = 0;
  std::uint64_t seed = 0;
  long long resampled = 0;  // thetas that produced too few records
};

namespace detail {

// Distance per the scan contract: components of q*theta reduced by
// nearest-integer rounding in double precision.
inline double scan_dist2(const double* theta, int d, long long q,
                         std::array<long long, 2>& p_out) {
  double s = 0.0;
  for (int c = 0; c < d; ++c) {
    const double t = static_cast<double>(q) * theta[c];
    const double r = std::nearbyint(t);
    const double diff = t - r;
    p_out[static_cast<std::size_t>(c)] = static_cast<long long>(r);
    s += diff * diff;
  }
  return s;
}

}  // namespace detail

// Scans q = 1..q_max and returns every strict improvement of
// min_p ||q*theta - p||. The hot path filters blocks of q with incremental
// fractional parts (resynchronized often enough that the drift stays below
// kMargin) and only candidate blocks are re-scanned with the exact per-q
// arithmetic above, so the output matches the naive scan.
inline std::vector<BestApproxRecord> best_approximations(
    const double* theta, int d, long long q_max) {
  if (d < 1 || d > 2) throw std::domain_error("best_approximations: d must be 1 or 2");
  if (q_max < 2) throw std::domain_error("best_approximations: q_max must be >= 2");
  for (int c = 0; c < d; ++c)
    if (!(theta[c] >= 0.0 && theta[c] < 1.0))
      throw std::domain_error("best_approximations: theta components must lie in [0,1)");

  std::vector<BestApproxRecord> records;
  records.reserve(64);
  double best2 = std::numeric_limits<double>::infinity();
  constexpr double kMargin = 1e-9;

  constexpr int kLanes = 8;
  constexpr int kChunk = 4096;  // q per filtered chunk; also the resync period
  static_assert(kChunk % kLanes == 0);

  double fx[2][kLanes];
  double step[2];
  for (int c = 0; c < d; ++c) {
    const double t = static_cast<double>(kLanes) * theta[c];
    step[c] = t - std::floor(t);
  }

  const auto exact_scan = [&](long long q_lo, long long q_hi) {
    std::array<long long, 2> p{0, 0};
    for (long long q = q_lo; q <= q_hi; ++q) {
      const double d2 = detail::scan_dist2(theta, d, q, p);
      if (d2 < best2) {
        best2 = d2;
        records.push_back({q, p, std::sqrt(d2)});
      }
    }
  };

  long long q = 1;
  while (q <= q_max) {
    const long long q_hi = std::min(q_max, q + kChunk - 1);
    if (q_hi - q + 1 < kChunk) {
      exact_scan(q, q_hi);
      break;
    }
    // Resynchronize lane states from exact products.
    for (int c = 0; c < d; ++c)
      for (int l = 0; l < kLanes; ++l) {
        const double t = static_cast<double>(q + l) * theta[c];
        fx[c][l] = t - std::floor(t);
      }
    double chunk_min = std::numeric_limits<double>::infinity();
    const int iters = kChunk / kLanes;
    if (d == 2) {
      double m[kLanes];
      for (int l = 0; l < kLanes; ++l) m[l] = std::numeric_limits<double>::infinity();
      for (int it = 0; it < iters; ++it) {
        for (int l = 0; l < kLanes; ++l) {
          const double u = fx[0][l];
          const double v = fx[1][l];
          const double ru = u < 0.5 ? u : 1.0 - u;
          const double rv = v < 0.5 ? v : 1.0 - v;
          const double d2 = ru * ru + rv * rv;
          m[l] = d2 < m[l] ? d2 : m[l];
          double nu = u + step[0];
          double nv = v + step[1];
          nu -= nu >= 1.0 ? 1.0 : 0.0;
          nv -= nv >= 1.0 ? 1.0 : 0.0;
          fx[0][l] = nu;
          fx[1][l] = nv;
        }
      }
      for (int l = 0; l < kLanes; ++l) chunk_min = std::min(chunk_min, m[l]);
    } else {
      double m[kLanes];
      for (int l = 0; l < kLanes; ++l) m[l] = std::numeric_limits<double>::infinity();
      for (int it = 0; it < iters; ++it) {
        for (int l = 0; l < kLanes; ++l) {
          const double u = fx[0][l];
          const double ru = u < 0.5 ? u : 1.0 - u;
          const double d2 = ru * ru;
          m[l] = d2 < m[l] ? d2 : m[l];
          double nu = u + step[0];
          nu -= nu >= 1.0 ? 1.0 : 0.0;
          fx[0][l] = nu;
        }
      }
      for (int l = 0; l < kLanes; ++l) chunk_min = std::min(chunk_min, m[l]);
    }
    if (chunk_min < best2 + kMargin) exact_scan(q, q_hi);
    q = q_hi + 1;
  }
  return records;
}

inline std::vector<BestApproxRecord> best_approximations(
    const std::vector<double>& theta, long long q_max) {
  return best_approximations(theta.data(), static_cast<int>(theta.size()), q_max);
}

// Per-theta slope (ln q_N - ln q_m)/(N - m) after discarding the first
// burn_in records; mean and standard error across random thetas. Streams are
// derived per theta index, so the estimate is reproducible and thread-count
// independent.
inline LevyEstimate levy_estimate(int d, long long thetas, long long q_max,
                                  int burn_in, std::uint64_t seed,
                                  unsigned threads = 1,
                                  std::vector<std::vector<BestApproxRecord>>* dump = nullptr,
                                  std::vector<std::array<double, 2>>* dump_thetas = nullptr) {
  if (d != 1 && d != 2) throw std::domain_error("levy_estimate: d must be 1 or 2");
  if (burn_in < 1) throw std::domain_error("levy_estimate: burn_in must be >= 1");
  if (thetas < 2) throw std::domain_error("levy_estimate: need at least 2 thetas");
  std::vector<double> slopes(static_cast<std::size_t>(thetas));
  std::vector<long long> resamples(static_cast<std::size_t>(thetas), 0);
  if (dump) dump->resize(static_cast<std::size_t>(thetas));
  if (dump_thetas) dump_thetas->resize(static_cast<std::size_t>(thetas));
  parallel_for(static_cast<std::size_t>(thetas), threads, [&](std::size_t i) {
    Xoshiro256pp rng = derived_stream(seed, i);
    while (true) {
      double th[2] = {0.0, 0.0};
      for (int c = 0; c < d; ++c) th[c] = uniform01(rng);
      const auto recs = best_approximations(th, d, q_max);
      if (static_cast<long long>(recs.size()) < burn_in + 2) {
        ++resamples[i];
        continue;
      }
      const std::size_t n = recs.size();
      const std::size_t m = static_cast<std::size_t>(burn_in);
      slopes[i] = (std::log(static_cast<double>(recs[n - 1].q)) -
                   std::log(static_cast<double>(recs[m - 1].q))) /
                  static_cast<double>(n - m);
      if (dump) (*dump)[i] = recs;
      if (dump_thetas) (*dump_thetas)[i] = {th[0], th[1]};
      break;
    }
  });
  double sum = 0.0, sumsq = 0.0;
  long long resampled = 0;
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    sum += slopes[i];
    sumsq += slopes[i] * slopes[i];
    resampled += resamples[i];
  }
  const double n = static_cast<double>(thetas);
  const double mean = sum / n;
  const double var = std::max(0.0, (sumsq / n - mean * mean) * n / (n - 1.0));
  LevyEstimate e;
  e.mean = mean;
  e.stderr_ = std::sqrt(var / n);
  e.thetas = thetas;
  e.q_max = q_max;
  e.burn_in = burn_in;
  e.seed = seed;
  e.resampled = resampled;
  return e;
}

// Exact continued-fraction convergent denominators of the dyadic rational
// represented by the double theta, by integer Euclid on theta * 2^53.
// Independent reference for the d = 1 record sequence.
inline std::vector<long long> convergent_denominators(double theta, long long q_max) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::domain_error("convergent_denominators: theta must lie in (0,1)");
  // Requires theta to be a multiple of 2^-53 (true for uniform01 draws), so
  // that theta = num / 2^53 holds exactly.
  const double scaled = std::ldexp(theta, 53);
  if (scaled != std::floor(scaled))
    throw std::domain_error("convergent_denominators: theta must be a multiple of 2^-53");
  unsigned long long den = 1ULL << 53;
  auto num = static_cast<unsigned long long>(scaled);
  std::vector<long long> qs;
  unsigned long long q_prev = 0, q_cur = 1;  // q_{-1}, q_0
  // Partial quotients a_1, a_2, ... of num/den.
  while (num != 0) {
    const unsigned long long a = den / num;
    const unsigned long long rem = den % num;
    const unsigned long long q_next = a * q_cur + q_prev;
    if (q_next > static_cast<unsigned long long>(q_max)) break;
    qs.push_back(static_cast<long long>(q_next));
    q_prev = q_cur;
    q_cur = q_next;
    den = num;
    num = rem;
  }
  // q_0 = 1 is a record by construction; deduplicate when a_1 = 1.
  if (qs.empty() || qs.front() != 1) qs.insert(qs.begin(), 1);
  return qs;
}

}  // namespace levy2d
