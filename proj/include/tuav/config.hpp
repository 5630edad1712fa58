#pragma once
// Plain-text configuration: [environment] / [network] / [simulation]
// sections with key = value lines. Densities are given per km^2 and angles
// in degrees; loading converts to the internal SI units.

#include <stdexcept>
#include <string>

#include "tuav/params.hpp"

namespace tuav {

struct Config {
  EnvironmentProfile env;
  NetworkParams net;
  SimulationParams sim;
  std::string preset_name = "urban";
};

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

Config default_config();                       // urban preset, default sim
Config parse_config(const std::string& text);  // throws ConfigError
Config load_config(const std::string& path);   // throws ConfigError
// Canonical round-trippable dump (also embedded in CSV comment headers).
std::string dump_config(const Config& cfg);

}  // namespace tuav
