#include "tuav/association.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tuav/channel.hpp"

namespace tuav {

namespace {
constexpr double kPi = std::numbers::pi;

struct PowerLaw {
  double P = 0;      // rho * eta
  double alpha = 0;
};

PowerLaw power_law(Serving s, const EnvironmentProfile& env,
                   const NetworkParams& net) {
  switch (s) {
    case Serving::TBS: return {net.rho_T * env.eta_T, net.alpha_T};
    case Serving::AerialLoS:
    case Serving::ClusterLoS: return {net.rho_ABS * env.eta_L, net.alpha_L};
    case Serving::AerialNLoS:
    case Serving::ClusterNLoS: return {net.rho_ABS * env.eta_N, net.alpha_N};
  }
  throw std::logic_error("power_law: bad class");
}

PowerLaw power_law(StationKind k, const EnvironmentProfile& env,
                   const NetworkParams& net) {
  switch (k) {
    case StationKind::TBS: return {net.rho_T * env.eta_T, net.alpha_T};
    case StationKind::AerialLoS: return {net.rho_ABS * env.eta_L, net.alpha_L};
    case StationKind::AerialNLoS: return {net.rho_ABS * env.eta_N, net.alpha_N};
  }
  throw std::logic_error("power_law: bad kind");
}

// Distance at which a station of class `o` matches the mean power of a
// class-`s` server at distance r: (P_o/P_s)^(1/a_o) * r^(a_s/a_o).
double raw_exclusion(const PowerLaw& s, const PowerLaw& o, double r) {
  return std::pow(o.P / s.P, 1.0 / o.alpha) * std::pow(r, s.alpha / o.alpha);
}

}  // namespace

Association::Association(const DistanceLaws& laws) : laws_(laws) {
  const DeploymentPlan& plan = laws.plan();
  const double delta = plan.net.delta;
  const bool thinned =
      laws.sim().cluster_mode == TypicalClusterMode::Thinned;
  q_.resize(plan.rings.size());
  for (size_t j = 0; j < plan.rings.size(); ++j)
    q_[j] = (thinned ? delta : 1.0) * plan.rings[j].p_i;
  q_out_ = thinned ? 1.0 - delta * (1.0 - plan.p_out) : plan.p_out;

  // Tabulate the q-weighted mixtures of the per-ring cluster densities on the
  // union of their supports, so downstream bracket integrals need one kernel
  // integral instead of one per ring.
  const int N = int(q_.size());
  for (int j = 1; j <= N; ++j) {
    if (q_[j - 1] <= 0) continue;
    if (!has_mix_) {
      mix_lo_ = laws.euclid_min(j);
      mix_hi_ = laws.euclid_max(j);
      has_mix_ = true;
    } else {
      mix_lo_ = std::min(mix_lo_, laws.euclid_min(j));
      mix_hi_ = std::max(mix_hi_, laws.euclid_max(j));
    }
  }
  if (has_mix_) {
    const int n = 4096;
    std::vector<double> xs(n + 1), yl(n + 1), yn(n + 1);
    for (int k = 0; k <= n; ++k) {
      const double x = mix_lo_ + (mix_hi_ - mix_lo_) * k / n;
      double sl = 0, sn = 0;
      for (int j = 1; j <= N; ++j) {
        if (q_[j - 1] <= 0) continue;
        sl += q_[j - 1] * laws.weighted_density(true, j, x);
        sn += q_[j - 1] * laws.weighted_density(false, j, x);
      }
      xs[k] = x;
      yl[k] = sl;
      yn[k] = sn;
    }
    mix_wl_ = InterpTable(xs, std::move(yl));
    mix_wn_ = InterpTable(std::move(xs), std::move(yn));
  }
}

double Association::mixed_density(bool los, double x) const {
  if (!has_mix_ || x <= mix_lo_ || x >= mix_hi_) return 0.0;
  return los ? mix_wl_(x) : mix_wn_(x);
}

double Association::exclusion_distance(Serving serving, StationKind other,
                                       int other_ring, double r) const {
  const auto& env = laws_.plan().env;
  const auto& net = laws_.plan().net;
  const double raw =
      raw_exclusion(power_law(serving, env, net), power_law(other, env, net), r);
  if (other == StationKind::TBS) return raw;
  return std::max(raw, laws_.altitude(other_ring));
}

double Association::raw_exclusion_distance(Serving serving, StationKind other,
                                           double r) const {
  const auto& env = laws_.plan().env;
  const auto& net = laws_.plan().net;
  return raw_exclusion(power_law(serving, env, net),
                       power_law(other, env, net), r);
}

double Association::floor_threshold(Serving serving, StationKind other,
                                    int other_ring) const {
  if (other == StationKind::TBS) return 0.0;
  const auto& env = laws_.plan().env;
  const auto& net = laws_.plan().net;
  const PowerLaw s = power_law(serving, env, net);
  const PowerLaw o = power_law(other, env, net);
  // Inverse of raw_exclusion at the altitude floor.
  return std::pow(s.P / o.P, 1.0 / s.alpha) *
         std::pow(laws_.altitude(other_ring), o.alpha / s.alpha);
}

namespace {
// Horizontal distance matching a euclidean exclusion radius for altitude h.
double horiz(double d, double h) {
  return std::sqrt(std::max(d * d - h * h, 0.0));
}
}  // namespace

// Core of every conditional association probability: void products of the
// competing fields times (for non-cluster servers) the own-cluster bracket.
double Association::conditional_prob(Serving s, int self_ring, double r) const {
  const auto& env = laws_.plan().env;
  const auto& net = laws_.plan().net;
  const int N = laws_.n_rings();
  const PowerLaw ps = power_law(s, env, net);
  const double rawL = raw_exclusion(ps, power_law(StationKind::AerialLoS, env, net), r);
  const double rawN = raw_exclusion(ps, power_law(StationKind::AerialNLoS, env, net), r);

  double logv = 0.0;
  if (s != Serving::TBS) {
    const double rawT = std::min(
        raw_exclusion(ps, power_law(StationKind::TBS, env, net), r),
        laws_.horizon());
    logv -= kPi * net.lambda_T * rawT * rawT;
  }
  for (int j = 1; j <= N; ++j) {
    const double h = laws_.altitude(j);
    if (!(s == Serving::AerialLoS && j == self_ring))
      logv -= laws_.lambda_los(j, horiz(std::max(rawL, h), h));
    if (!(s == Serving::AerialNLoS && j == self_ring))
      logv -= laws_.lambda_nlos(j, horiz(std::max(rawN, h), h));
  }

  double bracket = 1.0;
  if (s == Serving::TBS || s == Serving::AerialLoS || s == Serving::AerialNLoS) {
    bracket = q_out_;
    for (int j = 1; j <= N; ++j)
      bracket += q_[j - 1] * (laws_.weighted_tail(true, j, rawL) +
                              laws_.weighted_tail(false, j, rawN));
  }
  return std::exp(logv) * bracket;
}

double Association::prob_tbs(double r) const {
  return conditional_prob(Serving::TBS, 0, r);
}

double Association::prob_aerial(bool los, int ring, double r) const {
  return conditional_prob(los ? Serving::AerialLoS : Serving::AerialNLoS, ring, r);
}

double Association::prob_cluster(bool los, int ring, double r) const {
  return conditional_prob(los ? Serving::ClusterLoS : Serving::ClusterNLoS,
                          ring, r);
}

double Association::prob_cluster_mix(int ring, double r) const {
  const double h = laws_.altitude(ring);
  if (r < h) return 0.0;
  const double pl =
      los_probability(horiz(r, h), h, laws_.plan().env);
  return pl * prob_cluster(true, ring, r) +
         (1.0 - pl) * prob_cluster(false, ring, r);
}

double Association::cluster_survival(int ring, Serving serving, double r) const {
  const auto& env = laws_.plan().env;
  const auto& net = laws_.plan().net;
  const PowerLaw ps = power_law(serving, env, net);
  const double rawL =
      raw_exclusion(ps, power_law(StationKind::AerialLoS, env, net), r);
  const double rawN =
      raw_exclusion(ps, power_law(StationKind::AerialNLoS, env, net), r);
  return laws_.weighted_tail(true, ring, rawL) +
         laws_.weighted_tail(false, ring, rawN);
}

double Association::cluster_bracket(Serving serving, double r) const {
  double b = q_out_;
  for (int j = 1; j <= laws_.n_rings(); ++j)
    b += q_[j - 1] * cluster_survival(j, serving, r);
  return b;
}

double Association::Masses::sum() const {
  double s = tbs;
  for (double v : aerial_los) s += v;
  for (double v : aerial_nlos) s += v;
  for (double v : cluster) s += v;
  return s;
}

Association::Masses Association::masses(double outer_rel_tol) const {
  const int N = laws_.n_rings();
  const double lt = laws_.plan().net.lambda_T;
  QuadratureSpec spec;
  spec.rel_tol = outer_rel_tol;
  spec.abs_tol = outer_rel_tol * 1e-2;

  Masses m;
  m.aerial_los.resize(N);
  m.aerial_nlos.resize(N);
  m.cluster.resize(N);

  // Truncate each outer integral where the class keeps < ~1e-12 of its mass.
  constexpr double kTail = 1e-12;
  if (lt > 0)
    m.tbs = integrate_finite(
                [&](double r) {
                  return prob_tbs(r) * laws_.nearest_pdf(StationKind::TBS, 0, r);
                },
                0.0, laws_.nearest_tail_cut(StationKind::TBS, 0, kTail), spec)
                .value;

  for (int i = 1; i <= N; ++i) {
    const double lo = laws_.altitude(i);
    m.aerial_los[i - 1] =
        integrate_finite(
            [&](double r) {
              return prob_aerial(true, i, r) *
                     laws_.nearest_pdf(StationKind::AerialLoS, i, r);
            },
            lo, laws_.nearest_tail_cut(StationKind::AerialLoS, i, kTail), spec)
            .value;
    m.aerial_nlos[i - 1] =
        integrate_finite(
            [&](double r) {
              return prob_aerial(false, i, r) *
                     laws_.nearest_pdf(StationKind::AerialNLoS, i, r);
            },
            lo, laws_.nearest_tail_cut(StationKind::AerialNLoS, i, kTail), spec)
            .value;
    m.cluster[i - 1] =
        q_[i - 1] *
        integrate_finite(
            [&](double x) {
              return prob_cluster(true, i, x) * laws_.weighted_density(true, i, x) +
                     prob_cluster(false, i, x) *
                         laws_.weighted_density(false, i, x);
            },
            laws_.euclid_min(i), laws_.euclid_max(i), spec)
            .value;
  }
  return m;
}

}  // namespace tuav
