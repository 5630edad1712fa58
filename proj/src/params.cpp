#include "tuav/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tuav {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double deg2rad(double d) { return d * kPi / 180.0; }
constexpr double per_km2(double v) { return v * 1e-6; }
}  // namespace

Preset urban_preset() {
  Preset p;
  p.env.a = 13.0;
  p.env.b = 0.21;
  p.env.eta_L = 0.4;
  p.env.eta_N = 0.005;
  p.env.eta_T = 0.1;
  p.env.m_L = 2;
  p.env.m_N = 1;
  p.env.m_T = 1;
  p.env.h_n = 15.0;
  p.env.lambda_b = per_km2(500.0);
  p.env.theta_min = deg2rad(15.3);
  p.net.R_0 = 200.0;
  p.net.N = 50;
  p.net.lambda_C = per_km2(20.0);
  p.net.lambda_T = per_km2(10.0);
  p.net.delta = 1.0;
  p.net.kappa_b = 0.02;
  p.net.T_max = 80.0;
  p.net.rho_ABS = 1.0;
  p.net.rho_T = 10.0;
  p.net.sigma2 = 1e-8;
  p.net.gamma = 1.0;
  p.net.c_bar = 0.0;
  p.net.alpha_T = 3.0;
  p.net.alpha_L = 2.0;
  p.net.alpha_N = 3.0;
  return p;
}

Preset suburban_preset() {
  Preset p = urban_preset();
  p.env.a = 4.88;
  p.env.b = 0.429;
  p.env.eta_L = 0.9772;
  p.env.eta_N = 0.0079;
  p.env.eta_T = 0.69;
  p.env.h_n = 8.0;
  p.env.lambda_b = per_km2(750.0);
  p.env.theta_min = deg2rad(10.6);
  p.net.lambda_C = per_km2(5.0);
  p.net.lambda_T = per_km2(1.5);
  p.net.sigma2 = 1e-12;
  return p;
}

Preset preset_by_name(const std::string& name) {
  if (name == "urban") return urban_preset();
  if (name == "suburban") return suburban_preset();
  throw std::invalid_argument("unknown preset: " + name);
}

double gs_density(double kappa_b, double lambda_b) {
  if (kappa_b < 0 || kappa_b > 1)
    throw std::invalid_argument("kappa_b must be in [0,1]");
  if (lambda_b < 0) throw std::invalid_argument("lambda_b must be >= 0");
  return kappa_b * lambda_b;
}

std::vector<RingGeometry> make_rings(double R_0, int N) {
  if (!(R_0 > 0) || N < 1)
    throw std::invalid_argument("make_rings: need R_0 > 0 and N >= 1");
  std::vector<RingGeometry> rings(N);
  for (int i = 1; i <= N; ++i) {
    rings[i - 1].index = i;
    rings[i - 1].inner = R_0 * (i - 1) / N;
    rings[i - 1].outer = (i == N) ? R_0 : R_0 * i / N;
    rings[i - 1].center = (2.0 * i - 1.0) * R_0 / (2.0 * N);
  }
  return rings;
}

RingProbabilities rooftop_ring_probabilities(double lambda_gs, double R_0, int N) {
  if (lambda_gs < 0) throw std::invalid_argument("lambda_gs must be >= 0");
  auto rings = make_rings(R_0, N);
  RingProbabilities rp;
  rp.p.resize(N);
  for (int i = 0; i < N; ++i) {
    const double a_in = kPi * rings[i].inner * rings[i].inner;
    const double a_out = kPi * rings[i].outer * rings[i].outer;
    rp.p[i] = std::exp(-lambda_gs * a_in) * (1.0 - std::exp(-lambda_gs * (a_out - a_in)));
  }
  rp.p_out = std::exp(-lambda_gs * kPi * R_0 * R_0);
  return rp;
}

ValidationReport validate_params(const EnvironmentProfile& env,
                                 const NetworkParams& net) {
  ValidationReport rep;
  auto bad = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

  if (!(env.a > 0)) bad("a must be > 0");
  if (!(env.b > 0)) bad("b must be > 0");
  for (auto [v, n] : {std::pair{env.eta_L, "eta_L"}, {env.eta_N, "eta_N"},
                      {env.eta_T, "eta_T"}})
    if (!(v > 0 && v <= 1)) bad(std::string(n) + " must be in (0,1]");
  for (auto [v, n] : {std::pair{env.m_L, "m_L"}, {env.m_N, "m_N"},
                      {env.m_T, "m_T"}})
    if (v < 1) bad(std::string(n) + " must be an integer >= 1");
  if (env.eta_L < env.eta_N)
    bad("eta_L must be >= eta_N (LoS attenuates no more than NLoS)");
  if (!(env.h_n > 0)) bad("h_n must be > 0");
  if (env.lambda_b < 0) bad("lambda_b must be >= 0");
  if (!(env.theta_min > 0 && env.theta_min <= kPi / 2))
    bad("theta_min must be in (0, pi/2]");

  if (!(net.R_0 > 0)) bad("R_0 must be > 0");
  if (net.N < 1) bad("N must be >= 1");
  if (net.lambda_C < 0) bad("lambda_C must be >= 0");
  if (net.lambda_T < 0) bad("lambda_T must be >= 0");
  if (!(net.delta >= 0 && net.delta <= 1)) bad("delta must be in [0,1]");
  if (!(net.kappa_b >= 0 && net.kappa_b <= 1)) bad("kappa_b must be in [0,1]");
  if (net.T_max < 0) bad("T_max must be >= 0");
  if (!(net.rho_ABS > 0)) bad("rho_ABS must be > 0");
  if (!(net.rho_T > 0)) bad("rho_T must be > 0");
  if (net.sigma2 < 0) bad("sigma2 must be >= 0");
  if (!(net.gamma > 0)) bad("gamma must be > 0");
  for (auto [v, n] : {std::pair{net.alpha_T, "alpha_T"}, {net.alpha_L, "alpha_L"},
                      {net.alpha_N, "alpha_N"}})
    if (!(v >= 2)) bad(std::string(n) + " must be >= 2");
  if (net.alpha_L > net.alpha_N)
    bad("alpha_L must not exceed alpha_N (LoS decays no faster than NLoS)");
  return rep;
}

}  // namespace tuav
