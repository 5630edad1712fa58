#pragma once
// Shared numerical kernels: adaptive quadrature, semi-infinite integration,
// box-constrained 2-D minimization, and monotone interpolation tables.
// Header-only so integrands inline.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace tuav {

struct QuadratureSpec {
  double rel_tol = 1e-6;
  double abs_tol = 1e-14;
  int max_intervals = 4000;
  double tail_threshold = 1e-12;  // relative cutoff for semi-infinite tails
};

struct QuadResult {
  double value = 0;
  double error = 0;  // absolute error estimate
};

class NumericsError : public std::runtime_error {
 public:
  NumericsError(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved error estimate " +
                           std::to_string(achieved) + ")"),
        achieved_error(achieved) {}
  double achieved_error;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1]. Nodes are symmetric; only the
// non-negative half is stored. Odd indices are the embedded Gauss-7 points.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
inline constexpr double kGK15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kGauss7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

template <typename F>
inline void gk15(const F& f, double a, double b, double& value, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double k = 0, g = 0;
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kGK15Nodes[i];
    const double fv = (i == 7) ? f(c) : f(c - dx) + f(c + dx);
    k += kGK15Weights[i] * fv;
    if (i & 1) g += kGauss7Weights[i / 2] * fv;
  }
  value = k * h;
  // Standard QUADPACK-style error heuristic.
  err = std::pow(200.0 * std::abs(k - g) * std::abs(h), 1.5);
  if (!(err < std::abs(value)) || !std::isfinite(err))
    err = std::abs(k - g) * std::abs(h);
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace detail

// Adaptive Gauss-Kronrod integration of f over [a, b].
template <typename F>
QuadResult integrate_finite(const F& f, double a, double b,
                            const QuadratureSpec& spec = {}) {
  if (!(b > a)) return {0.0, 0.0};
  std::priority_queue<detail::Interval> heap;
  detail::Interval whole{a, b, 0, 0};
  detail::gk15(f, a, b, whole.value, whole.error);
  double total = whole.value, total_err = whole.error;
  heap.push(whole);
  int used = 1;
  auto tol = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(total)); };
  while (total_err > tol() && used < spec.max_intervals) {
    detail::Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval exhausted by rounding
      total_err -= worst.error;
      continue;
    }
    detail::Interval left{worst.a, mid, 0, 0}, right{mid, worst.b, 0, 0};
    detail::gk15(f, left.a, left.b, left.value, left.error);
    detail::gk15(f, right.a, right.b, right.value, right.error);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++used;
  }
  if (total_err > tol() && total_err > 16 * spec.abs_tol)
    throw NumericsError("quadrature did not converge", total_err);
  return {total, total_err};
}

// Upper bound on simultaneously integrated components (see below).
inline constexpr int kMaxQuadComponents = 16;

namespace detail {

struct IntervalV {
  double a = 0, b = 0, score = 0;
  std::array<double, kMaxQuadComponents> value{}, error{};
  bool operator<(const IntervalV& o) const { return score < o.score; }
};

template <typename F>
inline void gk15v(const F& f, int n, double a, double b, IntervalV& iv) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::array<double, kMaxQuadComponents> k{}, g{}, f1{}, f2{};
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kGK15Nodes[i];
    if (i == 7) {
      f(c, f1.data());
      f2.fill(0.0);
    } else {
      f(c - dx, f1.data());
      f(c + dx, f2.data());
    }
    for (int q = 0; q < n; ++q) {
      const double fv = f1[q] + f2[q];
      k[q] += kGK15Weights[i] * fv;
      if (i & 1) g[q] += kGauss7Weights[i / 2] * fv;
    }
  }
  iv.a = a;
  iv.b = b;
  for (int q = 0; q < n; ++q) {
    iv.value[q] = k[q] * h;
    double err = std::pow(200.0 * std::abs(k[q] - g[q]) * std::abs(h), 1.5);
    if (!(err < std::abs(iv.value[q])) || !std::isfinite(err))
      err = std::abs(k[q] - g[q]) * std::abs(h);
    iv.error[q] = err;
  }
}

}  // namespace detail

// Adaptive Gauss-Kronrod for n <= kMaxQuadComponents integrands evaluated at
// shared nodes: f(x, out) writes the n component values. Splitting keys on
// the worst normalized component error; every component meets spec on exit.
// Sharing nodes amortizes whatever per-node work the components have in
// common (a Laplace transform at several s values, a value and its
// derivative, ...).
template <typename F>
void integrate_finite_multi(const F& f, int n, double a, double b,
                            const QuadratureSpec& spec, double* out) {
  if (n <= 0 || n > kMaxQuadComponents)
    throw std::invalid_argument("integrate_finite_multi: bad component count");
  for (int q = 0; q < n; ++q) out[q] = 0.0;
  if (!(b > a)) return;

  std::array<double, kMaxQuadComponents> total{}, total_err{};
  auto tol = [&](int q) {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(total[q]));
  };
  auto rescore = [&](detail::IntervalV& iv) {
    iv.score = 0;
    for (int q = 0; q < n; ++q)
      iv.score = std::max(iv.score, iv.error[q] / tol(q));
  };
  auto converged = [&] {
    for (int q = 0; q < n; ++q)
      if (total_err[q] > tol(q)) return false;
    return true;
  };

  std::priority_queue<detail::IntervalV> heap;
  detail::IntervalV whole;
  detail::gk15v(f, n, a, b, whole);
  for (int q = 0; q < n; ++q) {
    total[q] = whole.value[q];
    total_err[q] = whole.error[q];
  }
  rescore(whole);
  heap.push(whole);
  int used = 1;
  while (!converged() && used < spec.max_intervals) {
    detail::IntervalV worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      for (int q = 0; q < n; ++q) total_err[q] -= worst.error[q];
      continue;
    }
    detail::IntervalV left, right;
    detail::gk15v(f, n, worst.a, mid, left);
    detail::gk15v(f, n, mid, worst.b, right);
    for (int q = 0; q < n; ++q) {
      total[q] += left.value[q] + right.value[q] - worst.value[q];
      total_err[q] += left.error[q] + right.error[q] - worst.error[q];
    }
    rescore(left);
    rescore(right);
    heap.push(left);
    heap.push(right);
    ++used;
  }
  if (!converged()) {
    double worst_err = 0;
    for (int q = 0; q < n; ++q) worst_err = std::max(worst_err, total_err[q]);
    if (worst_err > 16 * spec.abs_tol)
      throw NumericsError("quadrature did not converge", worst_err);
  }
  for (int q = 0; q < n; ++q) out[q] = total[q];
}

// Integral of f over [a, inf). The domain is mapped onto [0,1) via
// x = a + t/(1-t); on top of that, panels whose contribution falls below
// tail_threshold relative to the accumulated integral are dropped, which
// truncates decaying tails early. A non-decaying integrand keeps the error
// estimate above tolerance and is reported as a numerical error.
template <typename F>
QuadResult integrate_semi_infinite(const F& f, double a,
                                   const QuadratureSpec& spec = {}) {
  auto g = [&](double t) {
    const double om = 1.0 - t;
    const double x = a + t / om;
    return f(x) / (om * om);
  };
  // Split [0,1) into geometric panels toward 1 and stop once a panel's
  // contribution is negligible relative to the running total.
  double total = 0, total_err = 0, top = 0;
  const double edges[] = {0.0, 0.5, 0.75, 0.875, 0.9375, 0.96875,
                          0.984375, 0.9921875, 0.99609375, 0.998046875,
                          0.9990234375, 0.99951171875, 0.999755859375,
                          0.9998779296875, 0.99993896484375, 1.0 - 1e-7,
                          1.0 - 1e-9, 1.0 - 1e-12};
  const int n_edges = int(sizeof(edges) / sizeof(edges[0]));
  double last = 0;
  for (int i = 0; i + 1 < n_edges; ++i) {
    QuadratureSpec panel_spec = spec;
    panel_spec.abs_tol = std::max(spec.abs_tol,
                                  spec.rel_tol * std::abs(total) * 0.1);
    QuadResult r = integrate_finite(g, edges[i], edges[i + 1], panel_spec);
    total += r.value;
    total_err += r.error;
    top = std::max(top, std::abs(r.value));
    last = std::abs(r.value);
    if (i > 1 && last < spec.tail_threshold * std::max(top, std::abs(total)))
      return {total, total_err};
  }
  // Ran out of panels with the tail still contributing: the integrand does
  // not decay fast enough to truncate (catches log-divergent tails whose
  // per-panel quadrature is clean).
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
  if (last > spec.tail_threshold * std::max(top, std::abs(total)) ||
      total_err > tol)
    throw NumericsError("semi-infinite integrand does not decay", total_err);
  return {total, total_err};
}

struct MinResult {
  double x = 0, y = 0, value = 0;
};

namespace detail {
// Golden-section minimization of a 1-D slice on [lo, hi].
template <typename F>
inline double golden_min(const F& f, double lo, double hi, double rel_tol) {
  constexpr double inv_phi = 0.6180339887498949;
  const double lo0 = lo, hi0 = hi;
  double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-30});
  while (hi - lo > rel_tol * scale) {
    if (f1 < f2) {
      hi = x2; x2 = x1; f2 = f1;
      x1 = hi - inv_phi * (hi - lo); f1 = f(x1);
    } else {
      lo = x1; x1 = x2; f1 = f2;
      x2 = lo + inv_phi * (hi - lo); f2 = f(x2);
    }
  }
  const double xm = 0.5 * (lo + hi);
  if (hi0 > lo0) {
    // A minimum on the interval edge is only ever bracketed to within
    // rel_tol; snap to an endpoint when it beats the interior candidate.
    const double fm = f(xm), fl = f(lo0), fh = f(hi0);
    if (fl <= fm && fl <= fh) return lo0;
    if (fh <= fm) return hi0;
  }
  return xm;
}
}  // namespace detail

// Minimize f over the box [xlo,xhi] x [ylo,yhi]: full coarse grid scan with
// the given steps (endpoints included), then coordinate-wise golden-section
// refinement, confined to +-1 coarse cell, down to relative tolerance rel_tol.
template <typename F>
MinResult minimize_box_2d(const F& f, double xlo, double xhi, double xstep,
                          double ylo, double yhi, double ystep,
                          double rel_tol = 1e-3) {
  if (xhi < xlo || yhi < ylo)
    throw std::invalid_argument("minimize_box_2d: empty box");
  const int nx = std::max(1, int(std::round((xhi - xlo) / xstep)) + 1);
  const int ny = std::max(1, int(std::round((yhi - ylo) / ystep)) + 1);
  double bx = xlo, by = ylo, bv = f(xlo, ylo);
  for (int i = 0; i < nx; ++i) {
    const double x = (i == nx - 1) ? xhi : xlo + i * xstep;
    for (int j = 0; j < ny; ++j) {
      const double y = (j == ny - 1) ? yhi : ylo + j * ystep;
      const double v = f(x, y);
      if (v < bv) { bv = v; bx = x; by = y; }
    }
  }
  double lx = std::max(xlo, bx - xstep), hx = std::min(xhi, bx + xstep);
  double ly = std::max(ylo, by - ystep), hy = std::min(yhi, by + ystep);
  for (int pass = 0; pass < 3; ++pass) {
    bx = detail::golden_min([&](double x) { return f(x, by); }, lx, hx, rel_tol);
    by = detail::golden_min([&](double y) { return f(bx, y); }, ly, hy, rel_tol);
  }
  bv = f(bx, by);
  return {bx, by, bv};
}

// Piecewise-cubic Hermite table. Slopes either come from the caller (exact
// derivatives, e.g. the integrand of a cumulative) or are filled with
// Fritsch-Carlson monotone estimates, which keeps sampled-function
// interpolation overshoot-free. Used to cache distance-law integrals.
class InterpTable {
 public:
  InterpTable() = default;
  InterpTable(std::vector<double> x, std::vector<double> y,
              std::vector<double> slopes)
      : x_(std::move(x)), y_(std::move(y)), m_(std::move(slopes)) {
    if (x_.size() < 2 || y_.size() != x_.size() || m_.size() != x_.size())
      throw std::invalid_argument("InterpTable: need >= 2 nodes");
    detect_uniform();
  }
  InterpTable(std::vector<double> x, std::vector<double> y)
      : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    if (n < 2 || y_.size() != n)
      throw std::invalid_argument("InterpTable: need >= 2 nodes");
    m_.resize(n);
    std::vector<double> d(n - 1);
    for (size_t i = 0; i + 1 < n; ++i)
      d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    m_[0] = d[0];
    m_[n - 1] = d[n - 2];
    for (size_t i = 1; i + 1 < n; ++i)
      m_[i] = (d[i - 1] * d[i] <= 0) ? 0.0 : 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);
    detect_uniform();
  }

  double front_x() const { return x_.front(); }
  double back_x() const { return x_.back(); }
  double front_y() const { return y_.front(); }
  double back_y() const { return y_.back(); }

  // Evaluate with clamped extrapolation (constant beyond the ends).
  double operator()(double x) const {
    if (x <= x_.front()) return y_.front();
    if (x >= x_.back()) return y_.back();
    const size_t lo = locate(x), hi = lo + 1;
    const double h = x_[hi] - x_[lo];
    const double t = (x - x_[lo]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return y_[lo] * (2 * t3 - 3 * t2 + 1) + h * m_[lo] * (t3 - 2 * t2 + t) +
           y_[hi] * (-2 * t3 + 3 * t2) + h * m_[hi] * (t3 - t2);
  }

  // Interpolant derivative; zero beyond the ends, consistent with the
  // clamped-constant extrapolation.
  double deriv(double x) const {
    if (x <= x_.front() || x >= x_.back()) return 0.0;
    const size_t lo = locate(x), hi = lo + 1;
    const double h = x_[hi] - x_[lo];
    const double t = (x - x_[lo]) / h;
    const double dy = (y_[hi] - y_[lo]) / h;
    return m_[lo] * (3 * t * t - 4 * t + 1) + m_[hi] * (3 * t * t - 2 * t) +
           dy * (6 * t - 6 * t * t);
  }

 private:
  // Index of the panel containing x (callers guarantee x is interior).
  // Near-uniform grids get O(1) arithmetic lookup with a short fix-up walk.
  size_t locate(double x) const {
    if (inv_dx_ > 0) {
      const double g = (x - x_.front()) * inv_dx_;
      size_t lo = size_t(std::min(double(x_.size() - 2), std::max(0.0, g)));
      while (lo > 0 && x < x_[lo]) --lo;
      while (lo + 2 < x_.size() && x >= x_[lo + 1]) ++lo;
      return lo;
    }
    return size_t(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
  }

  void detect_uniform() {
    const size_t n = x_.size();
    const double dx = (x_.back() - x_.front()) / double(n - 1);
    if (!(dx > 0)) return;
    for (size_t i = 0; i < n; ++i)
      if (std::abs(x_[i] - (x_.front() + dx * double(i))) > 1e-6 * dx) return;
    inv_dx_ = 1.0 / dx;
  }

  std::vector<double> x_, y_, m_;
  double inv_dx_ = 0;  // > 0 iff the grid is (near-)uniform
};

// Tabulated cumulative integral F(x) = int_a^x f, built panel-wise with
// Gauss-Kronrod so node values carry quadrature precision; node slopes are
// the exact integrand values f(x_i).
template <typename F>
InterpTable build_cumulative_table(const F& f, double a, double b,
                                   int n_panels) {
  std::vector<double> xs(n_panels + 1), ys(n_panels + 1), ms(n_panels + 1);
  for (int i = 0; i <= n_panels; ++i)
    xs[i] = a + (b - a) * double(i) / n_panels;
  ys[0] = 0;
  ms[0] = f(a);
  double acc = 0;
  for (int i = 0; i < n_panels; ++i) {
    double v, e;
    detail::gk15(f, xs[i], xs[i + 1], v, e);
    acc += v;
    ys[i + 1] = acc;
    ms[i + 1] = f(xs[i + 1]);
  }
  return InterpTable(std::move(xs), std::move(ys), std::move(ms));
}

}  // namespace tuav
