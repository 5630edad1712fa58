#include "tuav/placement.hpp"

#include <cmath>
#include <numbers>

#include "tuav/channel.hpp"
#include "tuav/numerics.hpp"

namespace tuav {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kGridT = 1.0;                     // tether grid step [m]
constexpr double kGridTheta = 0.5 * kPi / 180.0;   // inclination grid step
}  // namespace

double offset_pdf(double r, double R_u, double R_0) {
  if (r <= 0 || r >= R_0 + R_u) return 0.0;
  if (R_u < 1e-9 * R_0 || r < R_0 - R_u) return 2.0 * r / (R_0 * R_0);
  const double c = (R_u * R_u + r * r - R_0 * R_0) / (2.0 * R_u * r);
  return 2.0 * r / (kPi * R_0 * R_0) * std::acos(std::clamp(c, -1.0, 1.0));
}

double avg_path_loss(double T, double theta, double R_n,
                     const EnvironmentProfile& env, const NetworkParams& net,
                     double rel_tol) {
  const double h = env.h_n + T * std::sin(theta);
  const double R_u = std::abs(R_n - T * std::cos(theta));
  const double R_0 = net.R_0;
  auto f = [&](double r) {
    return path_loss(std::sqrt(r * r + h * h), h, env, net) *
           offset_pdf(r, R_u, R_0);
  };
  QuadratureSpec spec;
  spec.rel_tol = rel_tol;
  // The offset density has a kink where its two branches meet; split there.
  const double joint = std::max(0.0, R_0 - R_u);
  double v = integrate_finite(f, 0.0, joint, spec).value;
  v += integrate_finite(f, joint, R_0 + R_u, spec).value;
  return v;
}

RingPlacement optimize_ring(double R_n, const EnvironmentProfile& env,
                            const NetworkParams& net) {
  // Grid scan with a cheap tolerance; neighboring cells differ far more than
  // the quadrature noise, so the winning cell is the same as at full accuracy.
  auto coarse = [&](double T, double theta) {
    return avg_path_loss(T, theta, R_n, env, net, 1e-4);
  };
  const MinResult m = minimize_box_2d(coarse, 0.0, net.T_max, kGridT,
                                      env.theta_min, kPi / 2, kGridTheta, 1e-3);
  // Polish inside the bracketing cells with the accurate objective.
  auto fine = [&](double T, double theta) {
    return avg_path_loss(T, theta, R_n, env, net);
  };
  const double lx = std::max(0.0, m.x - kGridT);
  const double hx = std::min(net.T_max, m.x + kGridT);
  const double ly = std::max(env.theta_min, m.y - kGridTheta);
  const double hy = std::min(kPi / 2, m.y + kGridTheta);
  double bx = m.x, by = m.y;
  for (int pass = 0; pass < 2; ++pass) {
    bx = detail::golden_min([&](double x) { return fine(x, by); }, lx, hx, 1e-3);
    by = detail::golden_min([&](double y) { return fine(bx, y); }, ly, hy, 1e-3);
  }
  RingPlacement pl;
  pl.R_n = R_n;
  pl.T_opt = bx;
  pl.theta_opt = by;
  pl.h_u = env.h_n + bx * std::sin(by);
  pl.R_u = std::abs(R_n - bx * std::cos(by));
  return pl;
}

DeploymentPlan build_deployment_plan(const EnvironmentProfile& env,
                                     const NetworkParams& net) {
  DeploymentPlan plan;
  plan.env = env;
  plan.net = net;
  const auto rings = make_rings(net.R_0, net.N);
  const auto rp = rooftop_ring_probabilities(
      gs_density(net.kappa_b, env.lambda_b), net.R_0, net.N);
  plan.p_out = rp.p_out;
  plan.rings.reserve(rings.size());
  for (const auto& ring : rings) {
    RingPlacement pl = optimize_ring(ring.center, env, net);
    pl.index = ring.index;
    pl.p_i = rp.p[ring.index - 1];
    plan.rings.push_back(pl);
  }
  return plan;
}

DeploymentPlan build_reference_plan(const EnvironmentProfile& env,
                                    const NetworkParams& net) {
  DeploymentPlan plan;
  plan.env = env;
  plan.net = net;
  const auto rings = make_rings(net.R_0, net.N);
  const auto rp = rooftop_ring_probabilities(
      gs_density(net.kappa_b, env.lambda_b), net.R_0, net.N);
  plan.p_out = rp.p_out;
  for (const auto& ring : rings) {
    RingPlacement pl;
    pl.index = ring.index;
    pl.R_n = ring.center;
    pl.T_opt = net.T_max;
    pl.theta_opt = kPi / 2;
    pl.h_u = env.h_n + net.T_max;
    pl.R_u = ring.center;  // no horizontal reach when hovering straight up
    pl.p_i = rp.p[ring.index - 1];
    plan.rings.push_back(pl);
  }
  return plan;
}

}  // namespace tuav
