#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tuav/channel.hpp"

using namespace tuav;

namespace {
// Gamma(m, 1/m) CDF for integer m (Erlang with rate m).
double gamma_cdf(double x, int m) {
  if (x <= 0) return 0.0;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < m; ++k) {
    term *= m * x / k;
    sum += term;
  }
  return 1.0 - std::exp(-m * x) * sum;
}

double ks_distance(std::vector<double>& xs, int m) {
  std::sort(xs.begin(), xs.end());
  const double n = double(xs.size());
  double d = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double F = gamma_cdf(xs[i], m);
    d = std::max(d, std::max(F - i / n, (i + 1) / n - F));
  }
  return d;
}
}  // namespace

TEST_CASE("line-of-sight probability") {
  const Preset u = urban_preset(), s = suburban_preset();

  // frozen against independent scalar evaluation
  CHECK(los_probability(100.0, 100.0, u.env) ==
        doctest::Approx(0.984557223124).epsilon(1e-10));
  CHECK(los_probability(0.0, 50.0, u.env) ==
        doctest::Approx(0.999998765756).epsilon(1e-10));
  CHECK(los_probability(200.0, 50.0, s.env) ==
        doctest::Approx(0.912366883732).epsilon(1e-10));

  // directly overhead: elevation angle 90 degrees regardless of altitude
  const double overhead = 1.0 / (1.0 + u.env.a * std::exp(-u.env.b *
                                                          (90.0 - u.env.a)));
  CHECK(los_probability(0.0, 1.0, u.env) ==
        doctest::Approx(overhead).epsilon(1e-12));
  CHECK(los_probability(0.0, 500.0, u.env) ==
        doctest::Approx(overhead).epsilon(1e-12));

  // grazing limit: elevation angle -> 0
  CHECK(los_probability(1e6, 50.0, u.env) ==
        doctest::Approx(4.994814115590e-03).epsilon(1e-9));

  // monotone: higher platform => more LoS, farther out => less LoS
  double prev = los_probability(200.0, 10.0, u.env);
  for (double h : {20.0, 40.0, 80.0, 160.0}) {
    const double p = los_probability(200.0, h, u.env);
    CHECK(p > prev);
    prev = p;
  }
  prev = los_probability(1.0, 60.0, u.env);
  for (double r : {10.0, 50.0, 200.0, 1000.0}) {
    const double p = los_probability(r, 60.0, u.env);
    CHECK(p < prev);
    prev = p;
  }

  for (double h : {40.0, 120.0})  // probabilities proper
    for (double r : {0.0, 30.0, 500.0}) {
      const double p = los_probability(r, h, u.env);
      CHECK(p > 0.0);
      CHECK(p <= 1.0);
    }

  CHECK_THROWS_AS(los_probability(10.0, 0.0, u.env), std::domain_error);
  CHECK_THROWS_AS(los_probability(10.0, -5.0, u.env), std::domain_error);
}

TEST_CASE("mean aerial path loss") {
  const Preset u = urban_preset(), s = suburban_preset();

  // frozen against independent scalar evaluation
  CHECK(path_loss(150.0, 95.0, u.env, u.net) ==
        doctest::Approx(3.3393129356e+07).epsilon(1e-9));
  CHECK(path_loss(300.0, 40.0, s.env, s.net) ==
        doctest::Approx(2.0392466305e+09).epsilon(1e-9));

  // directly overhead (d = h): the LoS split is taken at r = 0
  const double h = 70.0;
  const double pl = los_probability(0.0, h, u.env);
  const double want = (1.0 - pl) * std::pow(h, u.net.alpha_N) / u.env.eta_N +
                      pl * std::pow(h, u.net.alpha_L) / u.env.eta_L;
  CHECK(path_loss(h, h, u.env, u.net) == doctest::Approx(want).epsilon(1e-12));

  // degenerate channel: equal gains and exponents collapse to d^alpha
  EnvironmentProfile env = u.env;
  env.eta_L = env.eta_N = 1.0;
  NetworkParams net = u.net;
  net.alpha_L = net.alpha_N = 3.0;
  CHECK(path_loss(123.0, 60.0, env, net) ==
        doctest::Approx(std::pow(123.0, 3.0)).epsilon(1e-12));

  // continuity in d: epsilon steps move the value by epsilon-sized amounts
  for (double d : {81.0, 100.0, 200.0, 399.0}) {
    const double v = path_loss(d, 80.0, u.env, u.net);
    const double v2 = path_loss(d + 1e-7, 80.0, u.env, u.net);
    CHECK(std::abs(v2 - v) < 1e-6 * std::abs(v));
  }
  // at d -> h the elevation angle has a sqrt cusp, so only value continuity
  // (not a Lipschitz step bound) is required there
  {
    const double vh = path_loss(80.0, 80.0, u.env, u.net);
    const double vh2 = path_loss(80.0 + 1e-9, 80.0, u.env, u.net);
    CHECK(std::abs(vh2 - vh) < 1e-5 * std::abs(vh));
  }

  CHECK_THROWS_AS(path_loss(50.0, 80.0, u.env, u.net), std::domain_error);
}

TEST_CASE("mean received power") {
  const Preset u = urban_preset();

  // terrestrial at 100 m: 10 W x 0.1 gain x 100^-3
  CHECK(mean_received_power(LinkKind::Terrestrial, 100.0, u.env, u.net) ==
        doctest::Approx(1e-6).epsilon(1e-12));
  // unit distance isolates rho * eta
  CHECK(mean_received_power(LinkKind::AerialLoS, 1.0, u.env, u.net) ==
        doctest::Approx(u.net.rho_ABS * u.env.eta_L).epsilon(1e-12));
  CHECK(mean_received_power(LinkKind::AerialNLoS, 1.0, u.env, u.net) ==
        doctest::Approx(u.net.rho_ABS * u.env.eta_N).epsilon(1e-12));

  // alpha_L = 2: doubling the distance quarters the power
  const double p1 = mean_received_power(LinkKind::AerialLoS, 50.0, u.env, u.net);
  const double p2 = mean_received_power(LinkKind::AerialLoS, 100.0, u.env, u.net);
  CHECK(p1 / p2 == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(mean_received_power(LinkKind::Terrestrial, 0.0, u.env, u.net),
                  std::domain_error);
  CHECK_THROWS_AS(
      mean_received_power(LinkKind::AerialLoS, -10.0, u.env, u.net),
      std::domain_error);
}

TEST_CASE("link tuples select the advertised constants") {
  const Preset u = urban_preset();
  const LinkTuple t = link_tuple(LinkKind::Terrestrial, u.env, u.net);
  CHECK(t.rho == u.net.rho_T);
  CHECK(t.eta == u.env.eta_T);
  CHECK(t.alpha == u.net.alpha_T);
  CHECK(t.m == u.env.m_T);
  const LinkTuple l = link_tuple(LinkKind::AerialLoS, u.env, u.net);
  CHECK(l.rho == u.net.rho_ABS);
  CHECK(l.eta == u.env.eta_L);
  CHECK(l.alpha == u.net.alpha_L);
  CHECK(l.m == u.env.m_L);
  const LinkTuple n = link_tuple(LinkKind::AerialNLoS, u.env, u.net);
  CHECK(n.eta == u.env.eta_N);
  CHECK(n.alpha == u.net.alpha_N);
  CHECK(n.m == u.env.m_N);
}

TEST_CASE("fading sampler: moments, determinism, goodness of fit") {
  const Preset u = urban_preset();

  SUBCASE("unit mean and shape-determined variance") {
    SplitRng rng(6001);
    const int n = 1000000;
    double sum = 0, sum2 = 0;
    for (int i = 0; i < n; ++i) {
      const double g = sample_fading(LinkKind::AerialNLoS, u.env, rng);  // m=1
      sum += g;
      sum2 += g * g;
    }
    CHECK(std::abs(sum / n - 1.0) < 0.005);

    SplitRng rng2(6002);
    sum = sum2 = 0;
    for (int i = 0; i < n; ++i) {
      const double g = sample_fading(LinkKind::AerialLoS, u.env, rng2);  // m=2
      sum += g;
      sum2 += g * g;
    }
    const double mean = sum / n;
    CHECK(std::abs(mean - 1.0) < 0.005);
    CHECK(std::abs(sum2 / n - mean * mean - 0.5) < 0.01);
  }

  SUBCASE("fixed seed reproduces the stream") {
    SplitRng a(99), b(99);
    for (int i = 0; i < 200; ++i)
      CHECK(sample_fading(LinkKind::AerialLoS, u.env, a) ==
            sample_fading(LinkKind::AerialLoS, u.env, b));
  }

  SUBCASE("Kolmogorov-Smirnov against the gamma law") {
    // critical value at significance 0.01 is 1.628/sqrt(n)
    const int n = 100000;
    const double crit = 1.628 / std::sqrt(double(n));
    for (int m : {1, 2, 3}) {
      EnvironmentProfile env = u.env;
      env.m_L = m;
      SplitRng rng(8100 + m);
      std::vector<double> xs(n);
      for (auto& x : xs) x = sample_fading(LinkKind::AerialLoS, env, rng);
      CHECK(ks_distance(xs, m) < crit);
    }
  }
}
