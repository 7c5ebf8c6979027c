#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

namespace levy2d {

// Raised when an adaptive scheme runs out of its evaluation budget. Carries
// the best estimate reached so far.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const char* what, double value, double error, long long evals)
      : std::runtime_error(what), value(value), error(error), evaluations(evals) {}
  double value;
  double error;
  long long evaluations;
};

// 7/15-point Gauss-Kronrod pair on [-1, 1] (QUADPACK dqk15 constants).
// Even-indexed nodes extend the embedded 7-point Gauss rule, whose weights
// are zero-padded so both rules run over one node loop.
struct GK15 {
  static constexpr int n = 15;
  static constexpr std::array<double, 15> node = {
      -0.991455371120812639206854697526329, -0.949107912342758524526189684047851,
      -0.864864423359769072789712788640926, -0.741531185599394439863864773280788,
      -0.586087235467691130294144838258730, -0.405845151377397166906606412076961,
      -0.207784955007898467600689403773245, 0.0,
      0.207784955007898467600689403773245,  0.405845151377397166906606412076961,
      0.586087235467691130294144838258730,  0.741531185599394439863864773280788,
      0.864864423359769072789712788640926,  0.949107912342758524526189684047851,
      0.991455371120812639206854697526329};
  static constexpr std::array<double, 15> wk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
      0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
      0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
      0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
      0.022935322010529224963732008058970};
  static constexpr std::array<double, 15> wg = {
      0.0, 0.129484966168869693270611432679082,
      0.0, 0.279705391489276667901467771423780,
      0.0, 0.381830050505118944950369775488975,
      0.0, 0.417959183673469387755102040816327,
      0.0, 0.381830050505118944950369775488975,
      0.0, 0.279705391489276667901467771423780,
      0.0, 0.129484966168869693270611432679082,
      0.0};
};

namespace detail {

template <class F>
inline void gk15_segment(F&& f, double a, double b, double& k15, double& g7,
                         long long& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double sk = 0.0, sg = 0.0;
  for (int i = 0; i < GK15::n; ++i) {
    const double y = f(c + h * GK15::node[i]);
    sk += GK15::wk[i] * y;
    sg += GK15::wg[i] * y;
  }
  evals += GK15::n;
  k15 = sk * h;
  g7 = sg * h;
}

}  // namespace detail

struct Quad1dResult {
  double value = 0.0;
  double error = 0.0;
  long long evaluations = 0;
};

// Adaptive 1D Gauss-Kronrod to an absolute tolerance. Bisection with the
// tolerance split between halves; deterministic traversal order.
template <class F>
Quad1dResult integrate_1d(F&& f, double a, double b, double abs_tol,
                          long long max_evals = 1'000'000, int max_depth = 48) {
  struct Seg {
    double a, b, tol;
    int depth;
  };
  Quad1dResult res;
  std::vector<Seg> stack{{a, b, abs_tol, 0}};
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    double k15, g7;
    detail::gk15_segment(f, s.a, s.b, k15, g7, res.evaluations);
    const double err = std::abs(k15 - g7);
    if (err <= s.tol || s.depth >= max_depth) {
      res.value += k15;
      res.error += err;
      continue;
    }
    if (res.evaluations > max_evals)
      throw BudgetExceeded("integrate_1d: budget exceeded", res.value, res.error,
                           res.evaluations);
    const double mid = 0.5 * (s.a + s.b);
    stack.push_back({mid, s.b, 0.5 * s.tol, s.depth + 1});
    stack.push_back({s.a, mid, 0.5 * s.tol, s.depth + 1});
  }
  return res;
}

struct Quad2dResult {
  double value = 0.0;
  double error = 0.0;
  long long evaluations = 0;
  int max_depth = 0;
};

namespace detail {

struct Box2d {
  double x0, x1, y0, y1;
  double value = 0.0, err = 0.0, errx = 0.0, erry = 0.0;
  int depth = 0;
  int tag = 0;
  std::uint64_t id = 0;
};

// Tensor GK15 on a box. The per-axis error indicators compare the full
// Kronrod product against the mixed Gauss/Kronrod products and drive the
// split-axis choice.
template <class F>
inline void eval_box(F&& f, Box2d& box, long long& evals) {
  const double cx = 0.5 * (box.x0 + box.x1), hx = 0.5 * (box.x1 - box.x0);
  const double cy = 0.5 * (box.y0 + box.y1), hy = 0.5 * (box.y1 - box.y0);
  double kk = 0.0, gk = 0.0, kg = 0.0;
  for (int i = 0; i < GK15::n; ++i) {
    const double x = cx + hx * GK15::node[i];
    double row_k = 0.0, row_g = 0.0;
    for (int j = 0; j < GK15::n; ++j) {
      const double y = cy + hy * GK15::node[j];
      const double v = f(x, y);
      row_k += GK15::wk[j] * v;
      row_g += GK15::wg[j] * v;
    }
    kk += GK15::wk[i] * row_k;
    gk += GK15::wg[i] * row_k;
    kg += GK15::wk[i] * row_g;
  }
  evals += GK15::n * GK15::n;
  const double scale = hx * hy;
  box.value = kk * scale;
  box.errx = std::abs(kk - gk) * scale;
  box.erry = std::abs(kk - kg) * scale;
  box.err = box.errx + box.erry;
}

struct WorstFirst {
  bool operator()(const Box2d& a, const Box2d& b) const {
    if (a.err != b.err) return a.err < b.err;
    return a.id > b.id;  // deterministic tie-break
  }
};

}  // namespace detail

// Adaptive 2D quadrature over a list of seed boxes, refined worst-first until
// the summed error estimate is below max(abs_tol, rel_tol * |value|). The
// final value is re-summed over leaves in creation order, so results are
// bit-identical for identical inputs.
template <class F>
Quad2dResult integrate_2d(F&& f, std::vector<detail::Box2d> seeds, double abs_tol,
                          double rel_tol, long long max_evals) {
  using detail::Box2d;
  std::priority_queue<Box2d, std::vector<Box2d>, detail::WorstFirst> heap;
  Quad2dResult res;
  std::uint64_t next_id = 0;
  double total = 0.0, total_err = 0.0;
  for (Box2d s : seeds) {
    s.id = next_id++;
    detail::eval_box(f, s, res.evaluations);
    total += s.value;
    total_err += s.err;
    heap.push(s);
  }
  std::vector<Box2d> leaves;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (res.evaluations >= max_evals) {
      // Drain the heap so the best estimate is still well-defined.
      while (!heap.empty()) {
        leaves.push_back(heap.top());
        heap.pop();
      }
      double v = 0.0, e = 0.0;
      std::sort(leaves.begin(), leaves.end(),
                [](const Box2d& a, const Box2d& b) { return a.id < b.id; });
      for (const auto& l : leaves) {
        v += l.value;
        e += l.err;
      }
      throw BudgetExceeded("integrate_2d: budget exceeded", v, e, res.evaluations);
    }
    Box2d worst = heap.top();
    heap.pop();
    total -= worst.value;
    total_err -= worst.err;
    const bool split_x = worst.errx >= worst.erry;
    Box2d lo = worst, hi = worst;
    if (split_x) {
      const double mid = 0.5 * (worst.x0 + worst.x1);
      lo.x1 = mid;
      hi.x0 = mid;
    } else {
      const double mid = 0.5 * (worst.y0 + worst.y1);
      lo.y1 = mid;
      hi.y0 = mid;
    }
    for (Box2d* child : {&lo, &hi}) {
      child->depth = worst.depth + 1;
      child->id = next_id++;
      detail::eval_box(f, *child, res.evaluations);
      total += child->value;
      total_err += child->err;
      res.max_depth = std::max(res.max_depth, child->depth);
      heap.push(*child);
    }
  }
  while (!heap.empty()) {
    leaves.push_back(heap.top());
    heap.pop();
  }
  std::sort(leaves.begin(), leaves.end(),
            [](const Box2d& a, const Box2d& b) { return a.id < b.id; });
  for (const auto& l : leaves) {
    res.value += l.value;
    res.error += l.err;
  }
  return res;
}

}  // namespace levy2d
