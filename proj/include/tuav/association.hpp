#pragma once
// Strongest-mean-power association: exclusion radii between station classes
// and the probability that each candidate class serves, conditioned on its
// distance.

#include <vector>

#include "tuav/distributions.hpp"

namespace tuav {

enum class Serving { TBS, AerialLoS, AerialNLoS, ClusterLoS, ClusterNLoS };

class Association {
 public:
  explicit Association(const DistanceLaws& laws);

  // Distance below which an interferer of class `other` would beat a station
  // of class `serving` located at distance r (ring indexes the aerial class
  // where an altitude floor applies; 1-based, 0 if not applicable).
  double exclusion_distance(Serving serving, StationKind other, int other_ring,
                            double r) const;
  // Exclusion radius before the altitude floor is applied; ring-independent.
  double raw_exclusion_distance(Serving serving, StationKind other,
                                double r) const;
  // Serving distance below which the exclusion radius sits at the altitude
  // floor h_u of the other ring.
  double floor_threshold(Serving serving, StationKind other, int other_ring) const;

  // P(class serves | candidate at distance r): terrestrial, per-ring aerial,
  // and the own-cluster platform split by LoS state.
  double prob_tbs(double r) const;
  double prob_aerial(bool los, int ring, double r) const;
  double prob_cluster(bool los, int ring, double r) const;
  // LoS/NLoS mixture of prob_cluster weighted by the LoS probability at r.
  double prob_cluster_mix(int ring, double r) const;

  // Own-cluster bracket: probability that the cluster platform is absent or
  // beaten, given a server of the stated class at distance r. Also the
  // per-ring beaten probability k_j(r) it is assembled from.
  double cluster_bracket(Serving serving, double r) const;
  double cluster_survival(int ring, Serving serving, double r) const;
  // Mixture weights of the own-cluster state: q_out + sum q[j] = 1.
  double weight_out() const { return q_out_; }
  double weight_ring(int ring) const { return q_[ring - 1]; }

  // Ring-weighted mixture of the own-cluster distance densities,
  // sum_j q[j] w_j(x). Because every per-ring exclusion floor lies below that
  // ring's own distance support, sums of per-ring truncated integrals against
  // w_j collapse exactly to one integral against this mixture from the raw
  // (unfloored) exclusion radius.
  double mixed_density(bool los, double x) const;
  bool has_mix() const { return has_mix_; }
  double mix_lo() const { return mix_lo_; }
  double mix_hi() const { return mix_hi_; }

  // Total association mass per class (integrated over the distance laws);
  // masses().sum() == 1 is the partition-of-unity check.
  struct Masses {
    double tbs = 0;
    std::vector<double> aerial_los, aerial_nlos, cluster;
    double sum() const;
  };
  Masses masses(double outer_rel_tol) const;

  const DistanceLaws& laws() const { return laws_; }

 private:
  friend class Interference;
  // Void products of the competing fields times (for non-cluster servers)
  // the own-cluster bracket; shared core of every prob_* function.
  double conditional_prob(Serving s, int self_ring, double r) const;

  const DistanceLaws& laws_;
  std::vector<double> q_;   // own-cluster ring weights (delta-thinned)
  double q_out_ = 1;
  InterpTable mix_wl_, mix_wn_;  // sum_j q[j] w_j for each LoS state
  double mix_lo_ = 0, mix_hi_ = 0;
  bool has_mix_ = false;
};

}  // namespace tuav
