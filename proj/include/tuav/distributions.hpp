#pragma once
// Distance laws of the candidate serving stations seen from the typical
// user: nearest terrestrial BS, nearest LoS / NLoS aerial platform per ring,
// and the user's own cluster platform. Also owns the per-ring numeric tables
// (LoS mass integrals, weighted cluster densities) that the association and
// interference layers integrate against.

#include <memory>
#include <vector>

#include "tuav/numerics.hpp"
#include "tuav/placement.hpp"

namespace tuav {

enum class StationKind { TBS, AerialLoS, AerialNLoS };

class DistanceLaws {
 public:
  DistanceLaws(const DeploymentPlan& plan, const SimulationParams& sim);

  // Cheap rebind for sweeps that change densities/weights but not placement
  // geometry (delta, lambda_C, lambda_T, kappa_b, gamma, sigma2, ...).
  DistanceLaws rebind(const NetworkParams& net,
                      const RingProbabilities& rp) const;

  const DeploymentPlan& plan() const { return plan_; }
  const SimulationParams& sim() const { return sim_; }
  int n_rings() const { return int(plan_.rings.size()); }
  double horizon() const { return sim_.horizon; }

  // ---- nearest-station laws (ring is 1-based; ignored for TBS) ----
  double nearest_cdf(StationKind k, int ring, double d) const;
  double nearest_pdf(StationKind k, int ring, double d) const;
  // Smallest distance beyond which the class retains less than `tail` of its
  // arrival mass; truncates outer integrals over these laws.
  double nearest_tail_cut(StationKind k, int ring, double tail) const;

  // ---- own-cluster platform laws, conditioned on rooftop ring ----
  double cluster_horizontal_cdf(int ring, double r) const;
  double cluster_horizontal_pdf(int ring, double r) const;
  double cluster_euclid_cdf(int ring, double d) const;
  double cluster_euclid_pdf(int ring, double d) const;
  // True if the closed-form horizontal PDF matched the finite-difference
  // check at build time (otherwise the law falls back to finite differences).
  bool closed_form_pdf_valid(int ring) const;

  // ---- per-ring geometry ----
  double altitude(int ring) const;        // h_u
  double offset(int ring) const;          // R_u
  double euclid_min(int ring) const;      // = altitude
  double euclid_max(int ring) const;      // sqrt((R_0+R_u)^2 + h_u^2)
  double horiz_horizon(int ring) const;   // sqrt(horizon^2 - h_u^2), floored at 0

  // ---- integral caches used by association / interference ----
  // int_0^x z p_L(z, h_i) dz, x clamped to the ring's horizontal horizon.
  double los_mass(int ring, double x) const;
  double nlos_mass(int ring, double x) const;  // x^2/2 - los_mass (same clamp)
  // Void exponents Lambda = 2 pi p_i delta lambda_C * mass(x).
  double lambda_los(int ring, double x) const;
  double lambda_nlos(int ring, double x) const;
  // Tabulated p_L(z, h_i); hot-loop stand-in for the exact expression.
  double los_prob_fast(int ring, double z) const;
  double ring_density(int ring) const;    // 2 pi p_i delta lambda_C
  // Weighted own-cluster densities w_L = p_L * f_euclid, w_N = p_N * f_euclid
  // (interpolated), and their tail masses int_lower^max w.
  double weighted_density(bool los, int ring, double x) const;
  double weighted_tail(bool los, int ring, double lower) const;

 private:
  struct RingTables;
  struct Tables;
  DistanceLaws() = default;
  const RingTables& rt(int ring) const;

  DeploymentPlan plan_;
  SimulationParams sim_;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace tuav
