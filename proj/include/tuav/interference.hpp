#pragma once
// Conditional Laplace transform of the aggregate interference, given the
// serving station class and distance. Product over the terrestrial field,
// the per-ring LoS/NLoS aerial fields, and the own-cluster platform factor,
// assembled in log space.

#include <vector>

#include "tuav/association.hpp"

namespace tuav {

// Integration lower limits and own-cluster factors for one conditioning.
// Per-ring limits derive from the raw radii: the LoS field for a ring at
// altitude h starts at sqrt(max(raw_e^2 - h^2, 0)) horizontally, and the
// own-cluster integrals start at raw_e / raw_l because each ring's density
// support already sits above its own altitude floor.
struct LaplaceContext {
  Serving serving = Serving::TBS;
  int ring = 0;                 // serving ring (aerial / cluster), 1-based
  double r = 0;                 // serving distance [m]
  double a = 0;                 // terrestrial field lower limit
  double raw_e = 0;             // unfloored LoS exclusion radius
  double raw_l = 0;             // unfloored NLoS exclusion radius
  double bracket_norm = 1;      // q_out + sum_j q_j k_j(r)
  bool cluster_serving = false; // own-cluster factor omitted when true
};

// One requested transform component: the kernel at s, or its s-derivative.
struct LaplaceComponent {
  double s = 0;
  bool deriv = false;
};

class Interference {
 public:
  explicit Interference(const Association& assoc);

  LaplaceContext context(Serving serving, int ring, double r) const;

  // L_I(s) and log L_I(s) for the aggregate interference.
  double laplace(double s, const LaplaceContext& ctx) const;
  double log_laplace(double s, const LaplaceContext& ctx) const;
  // L_{I + noise}(s) = exp(-s sigma2) L_I(s).
  double laplace_with_noise(double s, const LaplaceContext& ctx) const;
  // d/ds log L_{I + noise}(s), analytic (for the exact coverage method).
  double dlog_laplace_with_noise(double s, const LaplaceContext& ctx) const;

  // Batched building blocks, all components integrated at shared quadrature
  // nodes (n <= kMaxQuadComponents). field_out[q] receives the summed field
  // exponents -int [1 - kern] dLambda (or their s-derivatives), cluster_out[q]
  // the own-cluster integral of (kern or dkern) against the ring-weighted
  // density mixture (zero when the cluster platform itself is serving).
  // Combine per component as
  //   log L = field + log((q_out + cluster) / bracket_norm),
  //   d/ds log L = field' + cluster' / (q_out + cluster).
  void components(const LaplaceComponent* comps, int n,
                  const LaplaceContext& ctx, double* field_out,
                  double* cluster_out) const;

  const Association& assoc() const { return assoc_; }

 private:
  // Rings sharing identical placement altitude have identical field
  // integrals up to the density factor; fold them into one quadrature.
  struct AltGroup {
    int rep = 0;     // representative ring, 1-based
    double dens = 0; // summed ring densities
  };

  const Association& assoc_;
  const DistanceLaws& laws_;
  std::vector<AltGroup> groups_;
};

}  // namespace tuav
