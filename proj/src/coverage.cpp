#include "tuav/coverage.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "tuav/numerics.hpp"

namespace tuav {

namespace {
constexpr double kPi = std::numbers::pi;

struct ServingLaw {
  double P = 0;  // rho * eta
  double alpha = 0;
  int m = 1;
};

ServingLaw serving_law(Serving s, const EnvironmentProfile& env,
                       const NetworkParams& net) {
  switch (s) {
    case Serving::TBS: return {net.rho_T * env.eta_T, net.alpha_T, env.m_T};
    case Serving::AerialLoS:
    case Serving::ClusterLoS:
      return {net.rho_ABS * env.eta_L, net.alpha_L, env.m_L};
    case Serving::AerialNLoS:
    case Serving::ClusterNLoS:
      return {net.rho_ABS * env.eta_N, net.alpha_N, env.m_N};
  }
  throw std::logic_error("serving_law: bad class");
}

double binom(int n, int k) {
  double v = 1;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}
}  // namespace

double cond_coverage(Serving serving, int ring, double r, double gamma,
                     CoverageMethod method, const Interference& interf) {
  const DistanceLaws& laws = interf.assoc().laws();
  const NetworkParams& net = laws.plan().net;
  const ServingLaw law = serving_law(serving, laws.plan().env, net);
  const double mu = law.m * gamma * std::pow(r, law.alpha) / law.P;
  const LaplaceContext ctx = interf.context(serving, ring, r);
  const double w_out = interf.assoc().weight_out();

  // All transform components one conditioning needs are integrated at shared
  // quadrature nodes; these assemble them per component.
  std::array<LaplaceComponent, kMaxQuadComponents> comps;
  std::array<double, kMaxQuadComponents> field{}, clus{};
  auto log_L = [&](int q) {
    double v = field[q] - comps[q].s * net.sigma2;
    if (!ctx.cluster_serving)
      v += std::log((w_out + clus[q]) / ctx.bracket_norm);
    return v;
  };
  auto dlog_L = [&](int qv, int qd) {
    double v = field[qd] - net.sigma2;
    if (!ctx.cluster_serving) v += clus[qd] / (w_out + clus[qv]);
    return v;
  };

  if (method == CoverageMethod::Approximate) {
    // Tight-bound CCDF of the gamma fading: 1 - (1 - e^{-beta m t})^m with
    // beta = (m!)^{-1/m}, expanded binomially over the Laplace transform.
    double fact = 1;
    for (int k = 2; k <= law.m; ++k) fact *= k;
    const double beta = std::pow(fact, -1.0 / law.m);
    double p = 0;
    for (int k0 = 1; k0 <= law.m; k0 += kMaxQuadComponents) {
      const int nb = std::min(law.m - k0 + 1, kMaxQuadComponents);
      for (int q = 0; q < nb; ++q) comps[q] = {(k0 + q) * beta * mu, false};
      interf.components(comps.data(), nb, ctx, field.data(), clus.data());
      for (int q = 0; q < nb; ++q) {
        const int k = k0 + q;
        const double term = binom(law.m, k) * std::exp(log_L(q));
        p += (k % 2 == 1) ? term : -term;
      }
    }
    return p;
  }

  // Exact gamma CCDF via derivatives of the Laplace transform at mu.
  const int cap = laws.sim().max_exact_shape;
  if (law.m > cap)
    throw std::invalid_argument(
        "exact coverage method supports fading shapes up to " +
        std::to_string(cap));
  if (law.m == 1) {
    comps[0] = {mu, false};
    interf.components(comps.data(), 1, ctx, field.data(), clus.data());
    return std::exp(log_L(0));
  }
  if (law.m == 2) {
    comps[0] = {mu, false};
    comps[1] = {mu, true};
    interf.components(comps.data(), 2, ctx, field.data(), clus.data());
    return std::exp(log_L(0)) * (1.0 - mu * dlog_L(0, 1));
  }
  // m == 3: second log-derivative by Richardson-extrapolated central
  // differences of the analytic first log-derivative.
  const double h = 1e-4 * mu;
  const double ss[5] = {mu, mu + h, mu - h, mu + 0.5 * h, mu - 0.5 * h};
  for (int i = 0; i < 5; ++i) {
    comps[2 * i] = {ss[i], false};
    comps[2 * i + 1] = {ss[i], true};
  }
  interf.components(comps.data(), 10, ctx, field.data(), clus.data());
  const double g = dlog_L(0, 1);
  auto diff = [&](int ip, int im, double step) {
    return (dlog_L(2 * ip, 2 * ip + 1) - dlog_L(2 * im, 2 * im + 1)) /
           (2.0 * step);
  };
  const double gp = (4.0 * diff(3, 4, 0.5 * h) - diff(1, 2, h)) / 3.0;
  const double L = std::exp(log_L(0));
  return L * (1.0 - mu * g + 0.5 * mu * mu * (g * g + gp));
}

namespace {

// Runs the family integrals on a small deterministic pool; results are
// stored per task index so the reduction order never depends on timing.
std::vector<double> run_tasks(const std::vector<std::function<double()>>& tasks,
                              unsigned threads) {
  std::vector<double> results(tasks.size(), 0.0);
  if (threads == 0) threads = std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = std::min<unsigned>(threads, tasks.size() ? tasks.size() : 1);

  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        results[i] = tasks[i]();
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failed) std::rethrow_exception(error);
  return results;
}

}  // namespace

CoverageResult coverage_probability(const DistanceLaws& laws,
                                    CoverageMethod method) {
  const Association assoc(laws);
  const Interference interf(assoc);
  const NetworkParams& net = laws.plan().net;
  const double gamma = net.gamma;
  const int N = laws.n_rings();

  QuadratureSpec spec;
  spec.rel_tol = laws.sim().outer_rel_tol;
  spec.abs_tol = spec.rel_tol * 1e-2;
  // Distances past this keep less than ~1e-12 of each class's mass, so the
  // truncation is far below any quadrature tolerance in use.
  constexpr double kTail = 1e-12;

  std::vector<std::function<double()>> tasks;

  tasks.push_back([&]() -> double {
    if (net.lambda_T <= 0) return 0.0;
    const double hi = laws.nearest_tail_cut(StationKind::TBS, 0, kTail);
    return integrate_finite(
               [&](double r) {
                 return cond_coverage(Serving::TBS, 0, r, gamma, method, interf) *
                        assoc.prob_tbs(r) *
                        laws.nearest_pdf(StationKind::TBS, 0, r);
               },
               0.0, hi, spec)
        .value;
  });
  for (int i = 1; i <= N; ++i) {
    tasks.push_back([&, i]() -> double {
      return integrate_finite(
                 [&](double r) {
                   return cond_coverage(Serving::AerialLoS, i, r, gamma, method,
                                        interf) *
                          assoc.prob_aerial(true, i, r) *
                          laws.nearest_pdf(StationKind::AerialLoS, i, r);
                 },
                 laws.altitude(i),
                 laws.nearest_tail_cut(StationKind::AerialLoS, i, kTail), spec)
          .value;
    });
  }
  for (int i = 1; i <= N; ++i) {
    tasks.push_back([&, i]() -> double {
      return integrate_finite(
                 [&](double r) {
                   return cond_coverage(Serving::AerialNLoS, i, r, gamma, method,
                                        interf) *
                          assoc.prob_aerial(false, i, r) *
                          laws.nearest_pdf(StationKind::AerialNLoS, i, r);
                 },
                 laws.altitude(i),
                 laws.nearest_tail_cut(StationKind::AerialNLoS, i, kTail), spec)
          .value;
    });
  }
  for (int j = 1; j <= N; ++j) {
    tasks.push_back([&, j]() -> double {
      const double q = assoc.weight_ring(j);
      if (q <= 0) return 0.0;
      return q * integrate_finite(
                     [&](double x) {
                       double v = 0;
                       const double wl = laws.weighted_density(true, j, x);
                       if (wl > 0)
                         v += cond_coverage(Serving::ClusterLoS, j, x, gamma,
                                            method, interf) *
                              assoc.prob_cluster(true, j, x) * wl;
                       const double wn = laws.weighted_density(false, j, x);
                       if (wn > 0)
                         v += cond_coverage(Serving::ClusterNLoS, j, x, gamma,
                                            method, interf) *
                              assoc.prob_cluster(false, j, x) * wn;
                       return v;
                     },
                     laws.euclid_min(j), laws.euclid_max(j), spec)
                     .value;
    });
  }

  const std::vector<double> vals = run_tasks(tasks, laws.sim().threads);

  CoverageResult res;
  res.method = method;
  res.outer_rel_tol = spec.rel_tol;
  res.tbs = vals[0];
  for (int i = 0; i < 2 * N; ++i) res.aerial += vals[1 + i];
  for (int j = 0; j < N; ++j) res.cluster += vals[1 + 2 * N + j];
  res.total = res.tbs + res.aerial + res.cluster;
  return res;
}

CoverageResult coverage_probability(const DeploymentPlan& plan,
                                    const SimulationParams& sim,
                                    CoverageMethod method) {
  const DistanceLaws laws(plan, sim);
  return coverage_probability(laws, method);
}

}  // namespace tuav
