#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "tuav/numerics.hpp"

using namespace tuav;

TEST_CASE("finite quadrature on smooth integrands") {
  auto sq = [](double x) { return x * x; };
  QuadResult r = integrate_finite(sq, 0.0, 1.0, {1e-10, 1e-16});
  CHECK(std::abs(r.value - 1.0 / 3.0) < 1e-9);

  // disk-distance density first branch: int_0^R 2r/R^2 dr = 1
  const double R = 137.0;
  auto pdf = [R](double x) { return 2.0 * x / (R * R); };
  CHECK(std::abs(integrate_finite(pdf, 0.0, R).value - 1.0) < 1e-9);

  auto s = [](double x) { return std::sin(x); };
  CHECK(std::abs(integrate_finite(s, 0.0, M_PI, {1e-10, 1e-16}).value - 2.0) <
        1e-9);

  // mild endpoint singularity in the derivative
  auto rt = [](double x) { return 1.5 * std::sqrt(x); };
  CHECK(std::abs(integrate_finite(rt, 0.0, 1.0, {1e-9, 1e-15}).value - 1.0) <
        1e-7);
}

TEST_CASE("finite quadrature edge cases and tolerance scaling") {
  auto f = [](double x) { return std::exp(-x) * std::cos(3 * x); };
  QuadResult empty = integrate_finite(f, 2.0, 2.0);
  CHECK(empty.value == 0.0);
  QuadResult rev = integrate_finite(f, 3.0, 1.0);
  CHECK(rev.value == 0.0);

  const double coarse = integrate_finite(f, 0.0, 10.0, {1e-6, 1e-14}).value;
  const double fine = integrate_finite(f, 0.0, 10.0, {1e-9, 1e-16}).value;
  CHECK(std::abs(coarse - fine) <= 1e-6 * std::abs(fine) + 1e-14);

  // determinism
  CHECK(integrate_finite(f, 0.0, 10.0).value ==
        integrate_finite(f, 0.0, 10.0).value);
}

TEST_CASE("multi-component quadrature matches scalar results") {
  auto fv = [](double x, double* out) {
    out[0] = x * x;
    out[1] = std::exp(-x);
    out[2] = std::sin(5 * x) + 2.0;
  };
  double out[3];
  integrate_finite_multi(fv, 3, 0.0, 2.0, {1e-10, 1e-16}, out);

  auto f0 = [](double x) { return x * x; };
  auto f1 = [](double x) { return std::exp(-x); };
  auto f2 = [](double x) { return std::sin(5 * x) + 2.0; };
  const QuadratureSpec spec{1e-10, 1e-16};
  CHECK(std::abs(out[0] - integrate_finite(f0, 0.0, 2.0, spec).value) < 1e-9);
  CHECK(std::abs(out[1] - integrate_finite(f1, 0.0, 2.0, spec).value) < 1e-9);
  CHECK(std::abs(out[2] - integrate_finite(f2, 0.0, 2.0, spec).value) < 1e-9);

  CHECK_THROWS_AS(integrate_finite_multi(fv, 0, 0.0, 1.0, spec, out),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      integrate_finite_multi(fv, kMaxQuadComponents + 1, 0.0, 1.0, spec, out),
      std::invalid_argument);
}

TEST_CASE("semi-infinite quadrature") {
  auto e = [](double x) { return std::exp(-x); };
  CHECK(std::abs(integrate_semi_infinite(e, 0.0, {1e-9, 1e-16}).value - 1.0) <
        1e-8);

  // nearest-point distance density of a planar Poisson field has unit mass
  const double lam = 1e-5;
  auto near = [lam](double x) {
    return 2 * M_PI * lam * x * std::exp(-M_PI * lam * x * x);
  };
  CHECK(std::abs(integrate_semi_infinite(near, 0.0, {1e-9, 1e-16}).value -
                 1.0) < 1e-8);

  auto zero = [](double) { return 0.0; };
  CHECK(integrate_semi_infinite(zero, 0.0).value == 0.0);

  // offset lower limit: int_3^inf e^-x = e^-3
  CHECK(std::abs(integrate_semi_infinite(e, 3.0, {1e-9, 1e-16}).value -
                 std::exp(-3.0)) < 1e-9);

  auto slow = [](double x) { return 1.0 / (1.0 + x); };
  CHECK_THROWS_AS(integrate_semi_infinite(slow, 0.0), NumericsError);
}

TEST_CASE("box minimizer") {
  auto bowl = [](double x, double y) {
    return (x - 1.0) * (x - 1.0) + (y - 1.3) * (y - 1.3);
  };
  MinResult m = minimize_box_2d(bowl, 0.0, 2.0, 0.25, 0.0, 2.0, 0.25, 1e-6);
  CHECK(std::abs(m.x - 1.0) < 1e-4);
  CHECK(std::abs(m.y - 1.3) < 1e-4);
  CHECK(m.value < 1e-7);

  auto flat = [](double, double) { return 4.0; };
  MinResult c = minimize_box_2d(flat, 0.0, 1.0, 0.5, 0.0, 1.0, 0.5);
  CHECK(c.value == 4.0);
  CHECK(c.x >= 0.0);
  CHECK(c.x <= 1.0);

  // multimodal objective: result must not exceed any coarse grid point
  auto wavy = [](double x, double y) {
    return std::sin(3 * x) * std::cos(2 * y) + 0.1 * x * x;
  };
  MinResult w = minimize_box_2d(wavy, 0.0, 4.0, 0.25, 0.0, 4.0, 0.25, 1e-5);
  CHECK(w.x >= 0.0);
  CHECK(w.x <= 4.0);
  CHECK(w.y >= 0.0);
  CHECK(w.y <= 4.0);
  double grid_best = 1e300;
  for (int i = 0; i <= 16; ++i)
    for (int j = 0; j <= 16; ++j)
      grid_best = std::min(grid_best, wavy(0.25 * i, 0.25 * j));
  CHECK(w.value <= grid_best + 1e-9 * (1.0 + std::abs(grid_best)));

  CHECK_THROWS_AS(minimize_box_2d(flat, 1.0, 0.0, 0.5, 0.0, 1.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("interpolation table") {
  SUBCASE("exact slopes reproduce a cubic") {
    std::vector<double> x, y, m;
    for (int i = 0; i <= 10; ++i) {
      const double t = 0.3 * i;
      x.push_back(t);
      y.push_back(t * t * t - 2 * t);
      m.push_back(3 * t * t - 2);
    }
    InterpTable tab(x, y, m);
    for (double t = 0.05; t < 3.0; t += 0.07) {
      CHECK(std::abs(tab(t) - (t * t * t - 2 * t)) < 1e-12);
      CHECK(std::abs(tab.deriv(t) - (3 * t * t - 2)) < 1e-10);
    }
  }

  SUBCASE("monotone fit has no overshoot and clamps outside") {
    std::vector<double> x{0, 1, 2, 3, 4, 5}, y{0, 0.1, 0.2, 3.0, 3.1, 3.2};
    InterpTable tab(x, y);
    for (double t = 0.0; t <= 5.0; t += 0.01) {
      CHECK(tab(t) >= y.front() - 1e-12);
      CHECK(tab(t) <= y.back() + 1e-12);
    }
    for (double t = 0.01; t < 5.0; t += 0.01)  // nondecreasing data stays so
      CHECK(tab(t + 0.01) >= tab(t) - 1e-12);
    CHECK(tab(-3.0) == y.front());
    CHECK(tab(9.0) == y.back());
    CHECK(tab.deriv(-3.0) == 0.0);
    CHECK(tab.deriv(9.0) == 0.0);
    CHECK(tab.front_x() == 0.0);
    CHECK(tab.back_x() == 5.0);
  }

  SUBCASE("node values are reproduced on uniform and ragged grids") {
    std::vector<double> xu, xr, yu, yr;
    for (int i = 0; i <= 64; ++i) {
      xu.push_back(i / 64.0);
      yu.push_back(std::sin(3 * xu.back()));
    }
    for (double t : {0.0, 0.13, 0.2, 0.55, 0.6, 0.61, 0.8, 1.0}) {
      xr.push_back(t);
      yr.push_back(std::sin(3 * t));
    }
    InterpTable tu(xu, yu), tr(xr, yr);
    for (size_t i = 0; i < xu.size(); ++i) CHECK(tu(xu[i]) == yu[i]);
    for (size_t i = 0; i < xr.size(); ++i)
      CHECK(std::abs(tr(xr[i]) - yr[i]) < 1e-15);
    // slope limiting clamps to zero at extrema nodes: error there is
    // second order, ~ (3/64)^2 curvature/8 ~ 2.6e-4 for this grid
    for (double t = 0.0; t <= 1.0; t += 0.003)
      CHECK(std::abs(tu(t) - std::sin(3 * t)) < 5e-4);
  }

  SUBCASE("constructor rejects degenerate input") {
    std::vector<double> one{1.0};
    CHECK_THROWS_AS(InterpTable(one, one), std::invalid_argument);
    std::vector<double> x{0, 1}, y{0, 1, 2};
    CHECK_THROWS_AS(InterpTable(x, y), std::invalid_argument);
  }
}

TEST_CASE("cumulative tables carry quadrature-grade node values") {
  auto f = [](double x) { return std::cos(x); };
  InterpTable F = build_cumulative_table(f, 0.0, M_PI / 2, 64);
  for (double t = 0.0; t <= M_PI / 2; t += 0.01) {
    CHECK(std::abs(F(t) - std::sin(t)) < 1e-9);
    if (t > 0.01 && t < M_PI / 2 - 0.01)
      CHECK(std::abs(F.deriv(t) - std::cos(t)) < 1e-6);
  }
  CHECK(F(0.0) == 0.0);
  CHECK(std::abs(F(M_PI / 2) - 1.0) < 1e-12);
}
