#pragma once
// Link-level model: LoS probability, mean path loss / received power, and
// Nakagami-m power fading.

#include "tuav/params.hpp"
#include "tuav/rng.hpp"

namespace tuav {

enum class LinkKind { Terrestrial, AerialLoS, AerialNLoS };

struct LinkTuple {
  double rho = 0;    // transmit power [W]
  double eta = 0;    // mean channel gain
  double alpha = 0;  // path-loss exponent
  int m = 1;         // Nakagami shape
};
LinkTuple link_tuple(LinkKind kind, const EnvironmentProfile& env,
                     const NetworkParams& net);

// P(LoS) for a ground-to-air link with horizontal distance r and altitude
// difference h. r = 0 means the user is directly below the platform.
double los_probability(double r, double h, const EnvironmentProfile& env);

// Mean aerial path loss at euclidean distance d for platform altitude h,
// averaged over the LoS/NLoS mix. Requires d >= h.
double path_loss(double d, double h, const EnvironmentProfile& env,
                 const NetworkParams& net);

// Mean received power rho * eta * d^-alpha for the given link class.
double mean_received_power(LinkKind kind, double distance,
                           const EnvironmentProfile& env,
                           const NetworkParams& net);

// Unit-mean power fading draw: Gamma(m, 1/m).
double sample_fading(LinkKind kind, const EnvironmentProfile& env, SplitRng& rng);

}  // namespace tuav
