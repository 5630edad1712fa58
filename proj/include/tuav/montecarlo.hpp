#pragma once
// Monte-Carlo counterpart of the analytic pipeline: network realizations in
// a finite window, coverage estimation, and the empirical cross-checks of
// the distance laws, association probabilities and Laplace transforms.

#include <string>
#include <vector>

#include "tuav/coverage.hpp"
#include "tuav/rng.hpp"

namespace tuav {

struct Vec2 {
  double x = 0, y = 0;
};

struct Realization {
  std::vector<Vec2> tbs;
  struct Platform {
    Vec2 pos;
    int ring = 0;  // 1-based
    bool los = false;
  };
  std::vector<Platform> platforms;    // other clusters' UAVs
  bool cluster_present = false;       // own-cluster UAV deployed
  Platform cluster;                   // valid when cluster_present
  double center_dist = 0;             // user -> own cluster center
};

Realization sample_realization(const DeploymentPlan& plan,
                               const SimulationParams& sim, SplitRng& rng);

struct SimEstimate {
  double estimate = 0;
  double ci_half = 0;      // 95% normal half-width
  uint64_t trials = 0;
  uint64_t seed = 0;
};

// Coverage estimate; also fills per-class serving shares when given.
struct SimBreakdown {
  SimEstimate coverage;
  double share_tbs = 0, share_aerial_los = 0, share_aerial_nlos = 0;
  double share_cluster_los = 0, share_cluster_nlos = 0;
  double cov_tbs = 0, cov_aerial = 0, cov_cluster = 0;  // joint probabilities
};
SimBreakdown simulate_coverage(const DeploymentPlan& plan,
                               const SimulationParams& sim);

// One empirical-vs-analytic comparison (law KS distance, association share,
// Laplace point, ...) in a flat report the CLI and tests both consume.
struct OracleCheck {
  std::string name;
  double gap = 0;        // measured discrepancy
  double tolerance = 0;  // pinned bound
  bool pass() const { return gap <= tolerance; }
};

struct OracleReport {
  std::vector<OracleCheck> checks;
  bool all_pass() const;
};

// Runs the empirical oracle suite (laws, association shares, conditional
// Laplace, ring occupancy). `samples` scales the heaviest pieces so unit
// tests can run a reduced version; tolerances scale accordingly inside.
OracleReport empirical_oracles(const DistanceLaws& laws, uint64_t samples);

}  // namespace tuav
