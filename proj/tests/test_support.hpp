#pragma once
// Shared fixtures: small hand-built deployment plans whose quantities were
// frozen against an independent numerical evaluation (scripted in Python with
// scipy quadrature), plus tolerance helpers.

#include <cmath>

#include "tuav/params.hpp"
#include "tuav/placement.hpp"

namespace testsup {

inline constexpr double kPi = 3.14159265358979323846;

// Two-ring urban scenario: hand-set tether placements so every downstream
// number (association, Laplace, coverage) has a frozen reference value.
//   ring 1: R_n=50,  T=60, theta=45deg -> h=57.4264068712, R_u=7.5735931288
//   ring 2: R_n=150, T=80, theta=30deg -> h=55.0,          R_u=80.7179676972
inline tuav::DeploymentPlan two_ring_plan() {
  tuav::Preset p = tuav::urban_preset();
  tuav::NetworkParams net = p.net;
  net.N = 2;
  const tuav::RingProbabilities rp = tuav::rooftop_ring_probabilities(
      tuav::gs_density(net.kappa_b, p.env.lambda_b), net.R_0, net.N);

  tuav::DeploymentPlan plan;
  plan.env = p.env;
  plan.net = net;
  plan.p_out = rp.p_out;

  auto ring = [&](int idx, double Rn, double T, double theta_deg) {
    tuav::RingPlacement r;
    r.index = idx;
    r.R_n = Rn;
    r.T_opt = T;
    r.theta_opt = theta_deg * kPi / 180.0;
    r.h_u = p.env.h_n + T * std::sin(r.theta_opt);
    r.R_u = std::abs(Rn - T * std::cos(r.theta_opt));
    r.p_i = rp.p[idx - 1];
    return r;
  };
  plan.rings.push_back(ring(1, 50.0, 60.0, 45.0));
  plan.rings.push_back(ring(2, 150.0, 80.0, 30.0));
  return plan;
}

// One ring with a pinned platform position: offset R_u = R_n (tether length
// 0) and altitude h_n. Geometry-level tests pick R_0 / R_n / h_n freely.
inline tuav::DeploymentPlan single_ring_plan(double R0, double Rn, double hn,
                                             const tuav::Preset& base) {
  tuav::NetworkParams net = base.net;
  net.R_0 = R0;
  net.N = 1;
  tuav::EnvironmentProfile env = base.env;
  env.h_n = hn;
  const tuav::RingProbabilities rp = tuav::rooftop_ring_probabilities(
      tuav::gs_density(net.kappa_b, env.lambda_b), net.R_0, net.N);

  tuav::DeploymentPlan plan;
  plan.env = env;
  plan.net = net;
  plan.p_out = rp.p_out;
  tuav::RingPlacement r;
  r.index = 1;
  r.R_n = Rn;
  r.T_opt = 0.0;
  r.theta_opt = kPi / 2.0;
  r.h_u = hn;
  r.R_u = Rn;
  r.p_i = rp.p[0];
  plan.rings.push_back(r);
  return plan;
}

inline tuav::RingProbabilities ring_probs_of(const tuav::DeploymentPlan& plan) {
  tuav::RingProbabilities rp;
  rp.p_out = plan.p_out;
  for (const auto& r : plan.rings) rp.p.push_back(r.p_i);
  return rp;
}

}  // namespace testsup
