#include "tuav/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

namespace tuav {

namespace {

constexpr double kPi = std::numbers::pi;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  size_t pos = 0;
  double d;
  try {
    d = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
  }
  if (pos != v.size())
    throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
  return d;
}

long long to_int(const std::string& key, const std::string& v) {
  const double d = to_double(key, v);
  if (d != std::floor(d))
    throw ConfigError("expected integer for " + key + ": '" + v + "'");
  return (long long)d;
}

struct Entry {
  std::string section, key, value;
};

std::vector<Entry> tokenize(const std::string& text) {
  std::vector<Entry> out;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section != "environment" && section != "network" && section != "simulation")
        throw ConfigError("unknown section [" + section + "]");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    out.push_back({section, trim(t.substr(0, eq)), trim(t.substr(eq + 1))});
    if (out.back().key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
  }
  return out;
}

void apply(Config& cfg, const Entry& e) {
  auto& env = cfg.env;
  auto& net = cfg.net;
  auto& sim = cfg.sim;
  const std::string& k = e.key;
  const std::string& v = e.value;
  if (e.section == "environment") {
    if (k == "preset") return;  // handled in a first pass
    else if (k == "a") env.a = to_double(k, v);
    else if (k == "b") env.b = to_double(k, v);
    else if (k == "eta_L") env.eta_L = to_double(k, v);
    else if (k == "eta_N") env.eta_N = to_double(k, v);
    else if (k == "eta_T") env.eta_T = to_double(k, v);
    else if (k == "m_L") env.m_L = int(to_int(k, v));
    else if (k == "m_N") env.m_N = int(to_int(k, v));
    else if (k == "m_T") env.m_T = int(to_int(k, v));
    else if (k == "h_n") env.h_n = to_double(k, v);
    else if (k == "lambda_b") env.lambda_b = to_double(k, v) * 1e-6;   // per km^2
    else if (k == "theta_min") env.theta_min = to_double(k, v) * kPi / 180.0;
    else throw ConfigError("unknown key in [environment]: " + k);
  } else if (e.section == "network") {
    if (k == "R_0") net.R_0 = to_double(k, v);
    else if (k == "N") net.N = int(to_int(k, v));
    else if (k == "lambda_C") net.lambda_C = to_double(k, v) * 1e-6;   // per km^2
    else if (k == "lambda_T") net.lambda_T = to_double(k, v) * 1e-6;   // per km^2
    else if (k == "delta") net.delta = to_double(k, v);
    else if (k == "kappa_b") net.kappa_b = to_double(k, v);
    else if (k == "T_max") net.T_max = to_double(k, v);
    else if (k == "rho_ABS") net.rho_ABS = to_double(k, v);
    else if (k == "rho_T") net.rho_T = to_double(k, v);
    else if (k == "sigma2") net.sigma2 = to_double(k, v);
    else if (k == "gamma") net.gamma = to_double(k, v);
    else if (k == "c_bar") net.c_bar = to_double(k, v);
    else if (k == "alpha_T") net.alpha_T = to_double(k, v);
    else if (k == "alpha_L") net.alpha_L = to_double(k, v);
    else if (k == "alpha_N") net.alpha_N = to_double(k, v);
    else throw ConfigError("unknown key in [network]: " + k);
  } else {  // simulation
    if (k == "trials") sim.trials = uint64_t(to_int(k, v));
    else if (k == "seed") sim.seed = uint64_t(to_int(k, v));
    else if (k == "window_km") sim.window_radius = to_double(k, v) * 1000.0;
    else if (k == "horizon_km") sim.horizon = to_double(k, v) * 1000.0;
    else if (k == "typical_cluster_mode") {
      if (v == "thinned") sim.cluster_mode = TypicalClusterMode::Thinned;
      else if (v == "paper") sim.cluster_mode = TypicalClusterMode::Paper;
      else throw ConfigError("typical_cluster_mode must be thinned|paper");
    }
    else if (k == "inner_rel_tol") sim.inner_rel_tol = to_double(k, v);
    else if (k == "outer_rel_tol") sim.outer_rel_tol = to_double(k, v);
    else if (k == "tail_threshold") sim.tail_threshold = to_double(k, v);
    else if (k == "max_exact_shape") sim.max_exact_shape = int(to_int(k, v));
    else if (k == "threads") sim.threads = int(to_int(k, v));
    else throw ConfigError("unknown key in [simulation]: " + k);
  }
}

}  // namespace

Config default_config() {
  Config cfg;
  const Preset p = urban_preset();
  cfg.env = p.env;
  cfg.net = p.net;
  cfg.preset_name = "urban";
  return cfg;
}

Config parse_config(const std::string& text) {
  const auto entries = tokenize(text);
  Config cfg = default_config();
  // Preset first so explicit keys override it regardless of file order.
  for (const auto& e : entries) {
    if (e.section == "environment" && e.key == "preset") {
      try {
        const Preset p = preset_by_name(e.value);
        cfg.env = p.env;
        cfg.net = p.net;
        cfg.preset_name = e.value;
      } catch (const std::invalid_argument& ex) {
        throw ConfigError(ex.what());
      }
    }
  }
  bool saw_horizon = false;
  for (const auto& e : entries) {
    if (e.section == "simulation" && e.key == "horizon_km") saw_horizon = true;
    apply(cfg, e);
  }
  if (!saw_horizon) cfg.sim.horizon = cfg.sim.window_radius;
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const Config& cfg) {
  std::ostringstream o;
  o.precision(12);
  const auto& env = cfg.env;
  const auto& net = cfg.net;
  const auto& sim = cfg.sim;
  o << "[environment]\n";
  o << "preset = " << cfg.preset_name << "\n";
  o << "a = " << env.a << "\nb = " << env.b << "\n";
  o << "eta_L = " << env.eta_L << "\neta_N = " << env.eta_N
    << "\neta_T = " << env.eta_T << "\n";
  o << "m_L = " << env.m_L << "\nm_N = " << env.m_N << "\nm_T = " << env.m_T << "\n";
  o << "h_n = " << env.h_n << "\n";
  o << "lambda_b = " << env.lambda_b * 1e6 << "\n";
  o << "theta_min = " << env.theta_min * 180.0 / kPi << "\n";
  o << "[network]\n";
  o << "R_0 = " << net.R_0 << "\nN = " << net.N << "\n";
  o << "lambda_C = " << net.lambda_C * 1e6 << "\nlambda_T = " << net.lambda_T * 1e6 << "\n";
  o << "delta = " << net.delta << "\nkappa_b = " << net.kappa_b << "\n";
  o << "T_max = " << net.T_max << "\n";
  o << "rho_ABS = " << net.rho_ABS << "\nrho_T = " << net.rho_T << "\n";
  o << "sigma2 = " << net.sigma2 << "\ngamma = " << net.gamma << "\n";
  o << "c_bar = " << net.c_bar << "\n";
  o << "alpha_T = " << net.alpha_T << "\nalpha_L = " << net.alpha_L
    << "\nalpha_N = " << net.alpha_N << "\n";
  o << "[simulation]\n";
  o << "trials = " << sim.trials << "\nseed = " << sim.seed << "\n";
  o << "window_km = " << sim.window_radius / 1000.0 << "\n";
  o << "horizon_km = " << sim.horizon / 1000.0 << "\n";
  o << "typical_cluster_mode = "
    << (sim.cluster_mode == TypicalClusterMode::Thinned ? "thinned" : "paper") << "\n";
  o << "inner_rel_tol = " << sim.inner_rel_tol << "\n";
  o << "outer_rel_tol = " << sim.outer_rel_tol << "\n";
  o << "tail_threshold = " << sim.tail_threshold << "\n";
  o << "max_exact_shape = " << sim.max_exact_shape << "\n";
  o << "threads = " << sim.threads << "\n";
  return o.str();
}

}  // namespace tuav
