#include "tuav/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tuav {

LinkTuple link_tuple(LinkKind kind, const EnvironmentProfile& env,
                     const NetworkParams& net) {
  switch (kind) {
    case LinkKind::Terrestrial:
      return {net.rho_T, env.eta_T, net.alpha_T, env.m_T};
    case LinkKind::AerialLoS:
      return {net.rho_ABS, env.eta_L, net.alpha_L, env.m_L};
    case LinkKind::AerialNLoS:
      return {net.rho_ABS, env.eta_N, net.alpha_N, env.m_N};
  }
  throw std::logic_error("link_tuple: bad kind");
}

double los_probability(double r, double h, const EnvironmentProfile& env) {
  if (r < 0 || h <= 0)
    throw std::domain_error("los_probability: need r >= 0 and h > 0");
  // Elevation angle in degrees; r = 0 is the straight-down limit (90 deg).
  const double angle =
      (r <= 0) ? 90.0 : std::atan(h / r) * 180.0 / std::numbers::pi;
  return 1.0 / (1.0 + env.a * std::exp(-env.b * (angle - env.a)));
}

namespace {
double pow_pos(double d, double alpha) {
  if (alpha == 2.0) return d * d;
  if (alpha == 3.0) return d * d * d;
  if (alpha == 4.0) { const double s = d * d; return s * s; }
  return std::pow(d, alpha);
}
}  // namespace

double path_loss(double d, double h, const EnvironmentProfile& env,
                 const NetworkParams& net) {
  if (d < h) throw std::domain_error("path_loss: d < h");
  const double r = std::sqrt(std::max(d * d - h * h, 0.0));
  const double pl = los_probability(r, h, env);
  return (1.0 - pl) / env.eta_N * pow_pos(d, net.alpha_N) +
         pl / env.eta_L * pow_pos(d, net.alpha_L);
}

double mean_received_power(LinkKind kind, double distance,
                           const EnvironmentProfile& env,
                           const NetworkParams& net) {
  if (!(distance > 0)) throw std::domain_error("mean_received_power: d <= 0");
  const LinkTuple t = link_tuple(kind, env, net);
  return t.rho * t.eta * std::pow(distance, -t.alpha);
}

double sample_fading(LinkKind kind, const EnvironmentProfile& env,
                     SplitRng& rng) {
  switch (kind) {
    case LinkKind::Terrestrial: return rng.gamma_unit_mean(env.m_T);
    case LinkKind::AerialLoS: return rng.gamma_unit_mean(env.m_L);
    case LinkKind::AerialNLoS: return rng.gamma_unit_mean(env.m_N);
  }
  throw std::logic_error("sample_fading: bad kind");
}

}  // namespace tuav
