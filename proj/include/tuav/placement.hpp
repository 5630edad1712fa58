#pragma once
// Per-ring tether placement: average path loss seen by a uniformly located
// in-cluster user, and its minimization over tether length and inclination.

#include <vector>

#include "tuav/params.hpp"

namespace tuav {

struct RingPlacement {
  int index = 0;        // ring number, 1-based
  double R_n = 0;       // ring center-line radius [m]
  double T_opt = 0;     // tether length [m]
  double theta_opt = 0; // inclination [rad]
  double h_u = 0;       // platform altitude h_n + T sin(theta) [m]
  double R_u = 0;       // horizontal offset from cluster center [m]
  double p_i = 0;       // ring occupancy probability
};

struct DeploymentPlan {
  EnvironmentProfile env;
  NetworkParams net;
  std::vector<RingPlacement> rings;
  double p_out = 0;
};

// PDF of the distance between a uniform point in a disk of radius R_0 and a
// fixed point at distance R_u from the disk center.
double offset_pdf(double r, double R_u, double R_0);

// Average aerial path loss over the user position for a platform tethered at
// ring radius R_n with tether length T and inclination theta.
double avg_path_loss(double T, double theta, double R_n,
                     const EnvironmentProfile& env, const NetworkParams& net,
                     double rel_tol = 1e-7);

// Minimize avg_path_loss over [0, T_max] x [theta_min, pi/2]
// (1 m x 0.5 deg coarse grid, then golden-section refinement).
RingPlacement optimize_ring(double R_n, const EnvironmentProfile& env,
                            const NetworkParams& net);

// Optimal placements for all N rings plus ring occupancy probabilities.
DeploymentPlan build_deployment_plan(const EnvironmentProfile& env,
                                     const NetworkParams& net);

// Same plan shape but with every ring pinned at (T_max, pi/2): the
// hover-straight-up reference configuration used for benchmarking.
DeploymentPlan build_reference_plan(const EnvironmentProfile& env,
                                    const NetworkParams& net);

}  // namespace tuav
