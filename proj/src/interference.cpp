#include "tuav/interference.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tuav/numerics.hpp"

namespace tuav {

namespace {
constexpr double kPi = std::numbers::pi;

double ipow(double u, int m) {
  double v = 1.0;
  for (int k = 0; k < m; ++k) v *= u;
  return v;
}

// Gamma-fading Laplace kernel (1 + s c / m)^(-m) for mean power c.
double kern(double s, double c, int m) {
  return 1.0 / ipow(1.0 + s * c / m, m);
}

// 1 - kern, stable when s c is tiny (binomial series; next term is O(x^4)).
double onem_kern(double s, double c, int m) {
  const double x = s * c / m;
  if (x > 1e-3) return 1.0 - 1.0 / ipow(1.0 + x, m);
  return m * x * (1.0 - 0.5 * (m + 1) * x * (1.0 - (m + 2) * x / 3.0));
}

// d/ds kern = -c (1 + s c / m)^(-m-1).
double dkern(double s, double c, int m) {
  return -c / ipow(1.0 + s * c / m, m + 1);
}

// x^(-alpha) for x > 0, fast-pathing the common exponents.
double inv_pow(double x, double alpha) {
  if (alpha == 2.0) return 1.0 / (x * x);
  if (alpha == 3.0) return 1.0 / (x * x * x);
  if (alpha == 4.0) { const double s = x * x; return 1.0 / (s * s); }
  return std::pow(x, -alpha);
}

// d^(-alpha) given d^2, fast-pathing the common exponents.
double inv_pow_d2(double d2, double alpha) {
  if (alpha == 2.0) return 1.0 / d2;
  if (alpha == 3.0) return 1.0 / (d2 * std::sqrt(d2));
  if (alpha == 4.0) return 1.0 / (d2 * d2);
  return std::pow(d2, -0.5 * alpha);
}
}  // namespace

Interference::Interference(const Association& assoc)
    : assoc_(assoc), laws_(assoc.laws()) {
  for (int j = 1; j <= laws_.n_rings(); ++j) {
    const double d = laws_.ring_density(j);
    if (d <= 0) continue;
    const double h = laws_.altitude(j);
    bool merged = false;
    for (AltGroup& g : groups_)
      if (laws_.altitude(g.rep) == h) {
        g.dens += d;
        merged = true;
        break;
      }
    if (!merged) groups_.push_back({j, d});
  }
}

LaplaceContext Interference::context(Serving serving, int ring, double r) const {
  LaplaceContext ctx;
  ctx.serving = serving;
  ctx.ring = ring;
  ctx.r = r;
  ctx.cluster_serving =
      serving == Serving::ClusterLoS || serving == Serving::ClusterNLoS;
  ctx.a = std::min(
      assoc_.exclusion_distance(serving, StationKind::TBS, 0, r),
      laws_.horizon());
  ctx.raw_e = assoc_.raw_exclusion_distance(serving, StationKind::AerialLoS, r);
  ctx.raw_l =
      assoc_.raw_exclusion_distance(serving, StationKind::AerialNLoS, r);
  // weighted_tail clamps below each support, so the floored radii and the raw
  // ones give the same bracket.
  if (!ctx.cluster_serving) ctx.bracket_norm = assoc_.cluster_bracket(serving, r);
  return ctx;
}

void Interference::components(const LaplaceComponent* comps, int n,
                              const LaplaceContext& ctx, double* field_out,
                              double* cluster_out) const {
  if (n <= 0 || n > kMaxQuadComponents)
    throw std::invalid_argument("Interference::components: bad count");
  const auto& env = laws_.plan().env;
  const auto& net = laws_.plan().net;
  const double H = laws_.horizon();
  for (int q = 0; q < n; ++q) {
    field_out[q] = 0.0;
    cluster_out[q] = 0.0;
  }

  QuadratureSpec spec;
  spec.rel_tol = laws_.sim().inner_rel_tol;
  spec.abs_tol = 1e-10;
  std::array<double, kMaxQuadComponents> vals{};

  // Field integrands live on multi-decade ranges; integrating in log
  // coordinates (t = ln(z + z0), Jacobian z + z0) turns them into compact
  // bumps the adaptive rule resolves with far fewer panels.
  const double P_T = net.rho_T * env.eta_T;
  if (net.lambda_T > 0 && ctx.a < H) {
    const double z0 = 1e-3 * H;
    integrate_finite_multi(
        [&](double t, double* out) {
          const double zp = std::exp(t);
          const double z = std::max(zp - z0, 1e-12);  // endpoint rounding
          const double c = P_T * inv_pow(z, net.alpha_T);
          for (int q = 0; q < n; ++q)
            out[q] = (comps[q].deriv ? dkern(comps[q].s, c, env.m_T)
                                     : onem_kern(comps[q].s, c, env.m_T)) *
                     z * zp;
        },
        n, std::log(ctx.a + z0), std::log(H + z0), spec, vals.data());
    const double C = 2.0 * kPi * net.lambda_T;
    for (int q = 0; q < n; ++q)
      field_out[q] -= C * (comps[q].deriv ? -vals[q] : vals[q]);
  }

  const double P_L = net.rho_ABS * env.eta_L;
  const double P_N = net.rho_ABS * env.eta_N;
  for (const AltGroup& g : groups_) {
    const int j = g.rep;
    const double h = laws_.altitude(j);
    const double X = laws_.horiz_horizon(j);
    const double bl = std::sqrt(std::max(ctx.raw_e * ctx.raw_e - h * h, 0.0));
    const double bn = std::sqrt(std::max(ctx.raw_l * ctx.raw_l - h * h, 0.0));
    if (bl < X) {
      integrate_finite_multi(
          [&](double t, double* out) {
            const double zp = std::exp(t);
            const double z = std::max(zp - h, 0.0);  // endpoint rounding
            const double d2 = z * z + h * h;
            const double c = P_L * inv_pow_d2(d2, net.alpha_L);
            const double w = laws_.los_prob_fast(j, z) * z * zp;
            for (int q = 0; q < n; ++q)
              out[q] = (comps[q].deriv ? dkern(comps[q].s, c, env.m_L)
                                       : onem_kern(comps[q].s, c, env.m_L)) *
                       w;
          },
          n, std::log(bl + h), std::log(X + h), spec, vals.data());
      for (int q = 0; q < n; ++q)
        field_out[q] -= g.dens * (comps[q].deriv ? -vals[q] : vals[q]);
    }
    if (bn < X) {
      integrate_finite_multi(
          [&](double t, double* out) {
            const double zp = std::exp(t);
            const double z = std::max(zp - h, 0.0);  // endpoint rounding
            const double d2 = z * z + h * h;
            const double c = P_N * inv_pow_d2(d2, net.alpha_N);
            const double w = (1.0 - laws_.los_prob_fast(j, z)) * z * zp;
            for (int q = 0; q < n; ++q)
              out[q] = (comps[q].deriv ? dkern(comps[q].s, c, env.m_N)
                                       : onem_kern(comps[q].s, c, env.m_N)) *
                       w;
          },
          n, std::log(bn + h), std::log(X + h), spec, vals.data());
      for (int q = 0; q < n; ++q)
        field_out[q] -= g.dens * (comps[q].deriv ? -vals[q] : vals[q]);
    }
  }

  if (ctx.cluster_serving || !assoc_.has_mix()) return;

  QuadratureSpec cspec;
  cspec.rel_tol = laws_.sim().inner_rel_tol;
  cspec.abs_tol = 1e-12;
  const double hi = assoc_.mix_hi();
  const double lo_l = std::max(ctx.raw_e, assoc_.mix_lo());
  const double lo_n = std::max(ctx.raw_l, assoc_.mix_lo());
  if (lo_l < hi) {
    integrate_finite_multi(
        [&](double x, double* out) {
          const double c = P_L * inv_pow(x, net.alpha_L);
          const double w = assoc_.mixed_density(true, x);
          for (int q = 0; q < n; ++q)
            out[q] = (comps[q].deriv ? dkern(comps[q].s, c, env.m_L)
                                     : kern(comps[q].s, c, env.m_L)) *
                     w;
        },
        n, lo_l, hi, cspec, vals.data());
    for (int q = 0; q < n; ++q) cluster_out[q] += vals[q];
  }
  if (lo_n < hi) {
    integrate_finite_multi(
        [&](double x, double* out) {
          const double c = P_N * inv_pow(x, net.alpha_N);
          const double w = assoc_.mixed_density(false, x);
          for (int q = 0; q < n; ++q)
            out[q] = (comps[q].deriv ? dkern(comps[q].s, c, env.m_N)
                                     : kern(comps[q].s, c, env.m_N)) *
                     w;
        },
        n, lo_n, hi, cspec, vals.data());
    for (int q = 0; q < n; ++q) cluster_out[q] += vals[q];
  }
}

double Interference::log_laplace(double s, const LaplaceContext& ctx) const {
  if (s == 0.0) return 0.0;
  const LaplaceComponent comp{s, false};
  double field = 0, clus = 0;
  components(&comp, 1, ctx, &field, &clus);
  if (ctx.cluster_serving) return field;
  return field + std::log((assoc_.weight_out() + clus) / ctx.bracket_norm);
}

double Interference::laplace(double s, const LaplaceContext& ctx) const {
  return std::exp(log_laplace(s, ctx));
}

double Interference::laplace_with_noise(double s, const LaplaceContext& ctx) const {
  return std::exp(log_laplace(s, ctx) - s * laws_.plan().net.sigma2);
}

double Interference::dlog_laplace_with_noise(double s,
                                             const LaplaceContext& ctx) const {
  const LaplaceComponent comp[2] = {{s, false}, {s, true}};
  double field[2] = {0, 0}, clus[2] = {0, 0};
  components(comp, 2, ctx, field, clus);
  double v = field[1] - laws_.plan().net.sigma2;
  if (!ctx.cluster_serving) v += clus[1] / (assoc_.weight_out() + clus[0]);
  return v;
}

}  // namespace tuav
