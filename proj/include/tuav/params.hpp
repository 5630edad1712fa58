#pragma once
// Scenario parameters: propagation environment, network constants, rooftop
// ring geometry and occupancy probabilities. Internal units are always
// meters / watts / radians / per-m^2.

#include <string>
#include <vector>

namespace tuav {

struct EnvironmentProfile {
  double a = 0, b = 0;           // LoS-probability curve constants
  double eta_L = 0;              // mean channel gain, air-to-ground LoS
  double eta_N = 0;              // mean channel gain, air-to-ground NLoS
  double eta_T = 0;              // mean channel gain, terrestrial
  int m_L = 1, m_N = 1, m_T = 1; // Nakagami fading shapes (integers)
  double h_n = 0;                // rooftop height [m]
  double lambda_b = 0;           // building density [1/m^2]
  double theta_min = 0;          // minimum tether inclination [rad]
};

struct NetworkParams {
  double R_0 = 0;                // cluster radius [m]
  int N = 0;                     // number of rooftop rings per cluster
  double lambda_C = 0;           // cluster density [1/m^2]
  double lambda_T = 0;           // terrestrial BS density [1/m^2]
  double delta = 1;              // fraction of clusters with an active UAV
  double kappa_b = 0;            // fraction of accessible rooftops
  double T_max = 0;              // tether length cap [m]
  double rho_ABS = 0;            // UAV transmit power [W]
  double rho_T = 0;              // terrestrial BS transmit power [W]
  double sigma2 = 0;             // noise power [W]
  double gamma = 1;              // SINR threshold
  double c_bar = 0;              // recharge-cycle constant (unused by coverage)
  double alpha_T = 0, alpha_L = 0, alpha_N = 0;  // path-loss exponents
};

enum class TypicalClusterMode {
  Thinned,  // typical cluster's UAV is deployed with probability delta
  Paper,    // typical cluster's UAV is deployed whenever a rooftop exists
};

struct SimulationParams {
  uint64_t trials = 10000;
  uint64_t seed = 1;
  double window_radius = 5000.0;  // Monte-Carlo disk radius [m]
  double horizon = 5000.0;        // analytic far-field truncation [m]
  TypicalClusterMode cluster_mode = TypicalClusterMode::Thinned;
  double inner_rel_tol = 1e-6;    // inner quadrature relative tolerance
  double outer_rel_tol = 1e-5;    // outer quadrature relative tolerance
  double tail_threshold = 1e-12;  // semi-infinite tail cutoff
  int max_exact_shape = 3;        // largest Nakagami shape the exact method takes
  int threads = 0;                // 0 = hardware concurrency
};

struct Preset {
  EnvironmentProfile env;
  NetworkParams net;
};

Preset urban_preset();
Preset suburban_preset();
// Throws std::invalid_argument for unknown names.
Preset preset_by_name(const std::string& name);

// Ground-station density: accessible-rooftop thinning of the building process.
double gs_density(double kappa_b, double lambda_b);

struct RingGeometry {
  int index = 0;           // 1-based
  double inner = 0;        // inner radius [m]
  double outer = 0;        // outer radius [m]
  double center = 0;       // ring center-line radius [m]
};
std::vector<RingGeometry> make_rings(double R_0, int N);

struct RingProbabilities {
  std::vector<double> p;   // p[i-1] = P(nearest accessible rooftop in ring i)
  double p_out = 0;        // P(no accessible rooftop within R_0)
};
RingProbabilities rooftop_ring_probabilities(double lambda_gs, double R_0, int N);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
// Checks ranges and cross-field constraints; never mutates or clamps.
ValidationReport validate_params(const EnvironmentProfile& env,
                                 const NetworkParams& net);

}  // namespace tuav
