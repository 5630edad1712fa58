#pragma once
// SINR coverage probability: conditional coverage per serving class and the
// total over association events and distance laws.

#include <vector>

#include "tuav/interference.hpp"

namespace tuav {

enum class CoverageMethod {
  Exact,        // Laplace-derivative sum (Nakagami shapes up to a cap)
  Approximate,  // tight-bound binomial expansion (default)
};

struct CoverageResult {
  double total = 0;
  double tbs = 0;      // served by a terrestrial BS
  double aerial = 0;   // served by a LoS or NLoS platform of another cluster
  double cluster = 0;  // served by the own-cluster platform
  CoverageMethod method = CoverageMethod::Approximate;
  double outer_rel_tol = 0;
};

// P(SINR > gamma | class serves at distance r).
double cond_coverage(Serving serving, int ring, double r, double gamma,
                     CoverageMethod method, const Interference& interf);

// Total coverage probability plus the per-class breakdown.
CoverageResult coverage_probability(const DistanceLaws& laws,
                                    CoverageMethod method = CoverageMethod::Approximate);

// Convenience: build plan -> laws -> coverage in one call.
CoverageResult coverage_probability(const DeploymentPlan& plan,
                                    const SimulationParams& sim,
                                    CoverageMethod method = CoverageMethod::Approximate);

}  // namespace tuav
