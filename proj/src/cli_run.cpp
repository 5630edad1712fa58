#include "tuav/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "tuav/config.hpp"
#include "tuav/coverage.hpp"
#include "tuav/csv.hpp"
#include "tuav/montecarlo.hpp"
#include "tuav/placement.hpp"

namespace tuav {

namespace {

RingProbabilities rp_of(const DeploymentPlan& plan) {
  RingProbabilities rp;
  rp.p_out = plan.p_out;
  for (const auto& r : plan.rings) rp.p.push_back(r.p_i);
  return rp;
}

std::vector<std::string> config_comments(const Config& cfg,
                                         const std::string& invocation) {
  std::vector<std::string> out;
  out.push_back("invocation: " + invocation);
  std::istringstream is(dump_config(cfg));
  for (std::string line; std::getline(is, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

void emit_table(const CsvTable& table, const std::string& path) {
  if (path.empty() || path == "-") {
    write_csv(std::cout, table);
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open output file: " + path);
  write_csv(f, table);
}

// "a..b", "a..b:step", "v1,v2,...", or a single value.
std::vector<double> parse_values(const std::string& spec, double default_step) {
  std::vector<double> vals;
  const auto range_pos = spec.find("..");
  if (range_pos != std::string::npos) {
    const double lo = std::stod(spec.substr(0, range_pos));
    std::string rest = spec.substr(range_pos + 2);
    double step = default_step;
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      step = std::stod(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const double hi = std::stod(rest);
    if (step <= 0 || hi < lo)
      throw ConfigError("bad sweep range: " + spec);
    for (double v = lo; v <= hi + 1e-9 * step; v += step) vals.push_back(v);
    return vals;
  }
  std::istringstream is(spec);
  for (std::string tok; std::getline(is, tok, ',');)
    if (!tok.empty()) vals.push_back(std::stod(tok));
  if (vals.empty()) throw ConfigError("empty sweep values: " + spec);
  return vals;
}

CoverageMethod parse_analytic_method(const std::string& name) {
  if (name == "approximate") return CoverageMethod::Approximate;
  if (name == "exact") return CoverageMethod::Exact;
  throw ConfigError("unknown analytic method: " + name);
}

const char* method_name(CoverageMethod m) {
  return m == CoverageMethod::Exact ? "exact" : "approximate";
}

std::vector<double> delta_grid() {
  std::vector<double> g;
  for (int k = 1; k <= 10; ++k) g.push_back(k / 10.0);
  return g;
}

struct EvalPoint {
  double delta = 1;              // effective own-cluster deploy probability
  CoverageResult analytic;       // valid when analytic evaluated
  bool has_analytic = false;
  SimBreakdown sim;              // valid when simulated
  bool has_sim = false;
};

// Best-delta search over the 0.1-step grid, reusing the geometry tables.
std::pair<double, CoverageResult> optimize_delta(const DistanceLaws& base,
                                                 NetworkParams net,
                                                 const RingProbabilities& rp,
                                                 CoverageMethod method,
                                                 const std::vector<double>& grid) {
  double best_delta = net.delta;
  CoverageResult best;
  bool first = true;
  for (double d : grid) {
    net.delta = d;
    const DistanceLaws laws = base.rebind(net, rp);
    const CoverageResult r = coverage_probability(laws, method);
    if (first || r.total > best.total) {
      best = r;
      best_delta = d;
      first = false;
    }
  }
  return {best_delta, best};
}

struct SweepRow {
  std::string env, system, param;
  double value = 0;
  EvalPoint pt;
};

CsvTable sweep_table(const std::vector<SweepRow>& rows, bool with_system,
                     double gamma_hint) {
  CsvTable t;
  t.header = {"env", "param", "value", "delta", "method", "gamma", "p_cov",
              "p_cov_tbs", "p_cov_aerial", "p_cov_cluster", "tol",
              "ci_low", "ci_high"};
  if (with_system) t.header.insert(t.header.begin() + 1, "system");
  for (const SweepRow& r : rows) {
    auto push = [&](const std::string& method, double g, double pc, double tbs,
                    double aer, double clu, double tol, std::optional<double> lo,
                    std::optional<double> hi) {
      std::vector<CsvCell> row;
      row.emplace_back(r.env);
      if (with_system) row.emplace_back(r.system);
      row.emplace_back(r.param);
      row.emplace_back(r.value);
      row.emplace_back(r.pt.delta);
      row.emplace_back(method);
      row.emplace_back(g);
      row.emplace_back(pc);
      row.emplace_back(tbs);
      row.emplace_back(aer);
      row.emplace_back(clu);
      row.emplace_back(tol);
      row.emplace_back(lo ? CsvCell(*lo) : CsvCell(std::string()));
      row.emplace_back(hi ? CsvCell(*hi) : CsvCell(std::string()));
      t.rows.push_back(std::move(row));
    };
    if (r.pt.has_analytic)
      push(method_name(r.pt.analytic.method), gamma_hint, r.pt.analytic.total,
           r.pt.analytic.tbs, r.pt.analytic.aerial, r.pt.analytic.cluster,
           r.pt.analytic.outer_rel_tol, std::nullopt, std::nullopt);
    if (r.pt.has_sim) {
      const SimEstimate& e = r.pt.sim.coverage;
      push("simulate", gamma_hint, e.estimate, r.pt.sim.cov_tbs,
           r.pt.sim.cov_aerial, r.pt.sim.cov_cluster, e.ci_half,
           e.estimate - e.ci_half, e.estimate + e.ci_half);
    }
  }
  return t;
}

struct SweepSettings {
  std::string param;
  std::vector<double> values;
  bool optimal_delta = false;
  bool do_analytic = true;
  bool do_sim = false;
  CoverageMethod method = CoverageMethod::Approximate;
  std::vector<double> dgrid = delta_grid();
};

// Evaluates one sweep over `cfg`'s environment; reuses distance tables when
// only densities change and rebuilds plans when the geometry moves.
std::vector<SweepRow> run_sweep(const Config& cfg, const SweepSettings& sw) {
  std::vector<SweepRow> rows;
  std::optional<DeploymentPlan> base_plan;
  std::optional<DistanceLaws> base_laws;
  const bool geometry_param = sw.param == "T_max" || sw.param == "R_0";
  if (!geometry_param) {
    base_plan = build_deployment_plan(cfg.env, cfg.net);
    base_laws.emplace(*base_plan, cfg.sim);
  }

  for (double v : sw.values) {
    NetworkParams net = cfg.net;
    std::optional<DistanceLaws> fresh;
    const DistanceLaws* laws = nullptr;
    RingProbabilities rp;
    if (sw.param == "T_max" || sw.param == "R_0") {
      (sw.param == "T_max" ? net.T_max : net.R_0) = v;
      const DeploymentPlan plan = build_deployment_plan(cfg.env, net);
      rp = rp_of(plan);
      fresh.emplace(plan, cfg.sim);
      laws = &*fresh;
    } else {
      if (sw.param == "delta") net.delta = v;
      else if (sw.param == "lambda_C") net.lambda_C = v * 1e-6;  // per km^2
      else if (sw.param == "gamma") net.gamma = v;
      else if (sw.param == "kappa_b") net.kappa_b = v;
      else throw ConfigError("unknown sweep parameter: " + sw.param);
      if (sw.param == "kappa_b")
        rp = rooftop_ring_probabilities(gs_density(net.kappa_b, cfg.env.lambda_b),
                                        net.R_0, net.N);
      else
        rp = rp_of(base_laws->plan());
      fresh.emplace(base_laws->rebind(net, rp));
      laws = &*fresh;
    }

    SweepRow row;
    row.env = cfg.preset_name;
    row.system = "proposed";
    row.param = sw.param;
    row.value = v;
    row.pt.delta = net.delta;

    std::optional<DistanceLaws> chosen;
    if (sw.optimal_delta && sw.param != "delta") {
      auto [d, res] = optimize_delta(*laws, net, rp, sw.method, sw.dgrid);
      row.pt.delta = d;
      row.pt.analytic = res;
      row.pt.has_analytic = sw.do_analytic;
      if (sw.do_sim) {
        NetworkParams net2 = net;
        net2.delta = d;
        chosen.emplace(laws->rebind(net2, rp));
      }
    } else {
      if (sw.do_analytic) {
        row.pt.analytic = coverage_probability(*laws, sw.method);
        row.pt.has_analytic = true;
      }
      if (sw.do_sim) chosen.emplace(*laws);
    }
    if (sw.do_sim) {
      row.pt.sim = simulate_coverage(chosen->plan(), cfg.sim);
      row.pt.has_sim = true;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Config preset_config(const std::string& name, const Config& like) {
  Config c = like;
  const Preset p = preset_by_name(name);
  c.env = p.env;
  c.net = p.net;
  c.preset_name = name;
  return c;
}

int reproduce_figure(const std::string& fig, const Config& cfg,
                     const std::string& out, const std::string& invocation) {
  std::vector<SweepRow> rows;
  bool with_system = false;
  auto for_envs = [&](auto&& fn) {
    for (const char* name : {"urban", "suburban"}) fn(preset_config(name, cfg));
  };

  if (fig == "fig3") {
    // Coverage vs maximum tether length at fixed deploy probabilities.
    for_envs([&](Config c) {
      for (double delta : {0.7, 1.0}) {
        c.net.delta = delta;
        SweepSettings sw{.param = "T_max", .values = parse_values("50..120", 10)};
        auto r = run_sweep(c, sw);
        rows.insert(rows.end(), r.begin(), r.end());
      }
    });
  } else if (fig == "fig4") {
    // Coverage vs own-cluster deploy probability.
    for_envs([&](const Config& c) {
      SweepSettings sw{.param = "delta", .values = parse_values("0.1..1.0", 0.1)};
      auto r = run_sweep(c, sw);
      rows.insert(rows.end(), r.begin(), r.end());
    });
  } else if (fig == "fig5") {
    // Coverage vs maximum tether length at the per-point best delta.
    for_envs([&](const Config& c) {
      SweepSettings sw{.param = "T_max",
                       .values = parse_values("50..120", 10),
                       .optimal_delta = true};
      auto r = run_sweep(c, sw);
      rows.insert(rows.end(), r.begin(), r.end());
    });
  } else if (fig == "fig6") {
    // Coverage vs cluster density (per km^2) at the per-point best delta.
    for_envs([&](const Config& c) {
      SweepSettings sw{.param = "lambda_C",
                       .values = parse_values("1..10", 1),
                       .optimal_delta = true};
      auto r = run_sweep(c, sw);
      rows.insert(rows.end(), r.begin(), r.end());
    });
  } else if (fig == "fig7") {
    // Optimized placement + best delta vs the full-tether vertical reference.
    with_system = true;
    for_envs([&](const Config& c) {
      const std::vector<double> kappas = {0.01, 0.02, 0.05, 0.1};
      SweepSettings sw{.param = "kappa_b", .values = kappas,
                       .optimal_delta = true};
      auto r = run_sweep(c, sw);
      rows.insert(rows.end(), r.begin(), r.end());
      // Reference: full tether pointing straight up, delta = 1.
      const DeploymentPlan ref = build_reference_plan(c.env, c.net);
      for (double k : kappas) {
        NetworkParams net = c.net;
        net.kappa_b = k;
        net.delta = 1.0;
        const RingProbabilities rp = rooftop_ring_probabilities(
            gs_density(net.kappa_b, c.env.lambda_b), net.R_0, net.N);
        DeploymentPlan plan = ref;
        plan.net = net;
        plan.p_out = rp.p_out;
        for (size_t i = 0; i < plan.rings.size(); ++i)
          plan.rings[i].p_i = rp.p[i];
        const DistanceLaws laws(plan, c.sim);
        SweepRow row;
        row.env = c.preset_name;
        row.system = "reference";
        row.param = "kappa_b";
        row.value = k;
        row.pt.delta = 1.0;
        row.pt.analytic = coverage_probability(laws, CoverageMethod::Approximate);
        row.pt.has_analytic = true;
        rows.push_back(std::move(row));
      }
    });
  } else if (fig == "fig8") {
    // Coverage vs cluster radius, full deployment (delta = 1).
    for_envs([&](Config c) {
      c.net.delta = 1.0;
      SweepSettings sw{.param = "R_0", .values = parse_values("100..500", 100)};
      auto r = run_sweep(c, sw);
      rows.insert(rows.end(), r.begin(), r.end());
    });
  } else {
    throw ConfigError("unknown figure: " + fig +
                      " (expected fig3..fig8)");
  }

  CsvTable t = sweep_table(rows, with_system, cfg.net.gamma);
  t.comments = config_comments(cfg, invocation);
  emit_table(t, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Tethered-UAV assisted cellular coverage model"};
  app.require_subcommand(1);

  std::string config_path;
  if (const char* envp = std::getenv("TUAV_CONFIG")) config_path = envp;
  std::string env_name, out_path = "-";
  std::optional<double> opt_delta, opt_gamma, opt_tmax, opt_window_km;
  std::optional<uint64_t> opt_trials, opt_seed;
  std::optional<unsigned> opt_threads;

  app.add_option("--config", config_path,
                 "configuration file (default: $TUAV_CONFIG)");
  app.add_option("--env", env_name, "preset: urban or suburban");
  app.add_option("--out", out_path, "output file ('-' = stdout)");
  app.add_option("--delta", opt_delta, "own-cluster deploy probability");
  app.add_option("--gamma", opt_gamma, "SINR threshold (linear)");
  app.add_option("--t-max", opt_tmax, "maximum tether length [m]");
  app.add_option("--trials", opt_trials, "Monte-Carlo trials");
  app.add_option("--seed", opt_seed, "Monte-Carlo seed");
  app.add_option("--threads", opt_threads, "worker threads (0 = hardware)");
  app.add_option("--window-km", opt_window_km, "simulation window radius [km]");

  auto* cmd_place = app.add_subcommand("optimize-placement",
                                       "per-ring tether placement");

  auto* cmd_cov = app.add_subcommand("coverage", "coverage probability");
  std::string cov_method = "analytic", analytic_method = "approximate";
  cmd_cov->add_option("--method", cov_method, "analytic | simulate | both");
  cmd_cov->add_option("--analytic-method", analytic_method,
                      "approximate | exact");

  auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep");
  std::string sweep_param, sweep_values, sweep_method = "analytic";
  bool optimal_delta = false;
  cmd_sweep->add_option("--param", sweep_param,
                        "T_max | delta | lambda_C | kappa_b | R_0 | gamma")
      ->required();
  cmd_sweep->add_option("--values", sweep_values,
                        "a..b[:step] or comma list (lambda_C per km^2)");
  cmd_sweep->add_flag("--optimal-delta", optimal_delta,
                      "maximize over the 0.1-step delta grid per point");
  cmd_sweep->add_option("--method", sweep_method, "analytic | simulate | both");
  cmd_sweep->add_option("--analytic-method", analytic_method,
                        "approximate | exact");

  auto* cmd_val = app.add_subcommand("validate", "empirical oracle suite");
  uint64_t val_samples = 20000;
  cmd_val->add_option("--samples", val_samples, "oracle sample count");

  auto* cmd_rep = app.add_subcommand("reproduce", "figure-reproduction recipes");
  std::string figure;
  cmd_rep->add_option("figure", figure, "fig3 .. fig8")->required();

  // Let global options (--env, --out, ...) appear after the subcommand too.
  for (auto* sc : {cmd_place, cmd_cov, cmd_sweep, cmd_val, cmd_rep})
    sc->fallthrough();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  std::string invocation;
  for (const auto& a : args) invocation += (invocation.empty() ? "" : " ") + a;

  try {
    Config cfg =
        config_path.empty() ? default_config() : load_config(config_path);
    if (!env_name.empty()) cfg = preset_config(env_name, cfg);
    if (opt_delta) cfg.net.delta = *opt_delta;
    if (opt_gamma) cfg.net.gamma = *opt_gamma;
    if (opt_tmax) cfg.net.T_max = *opt_tmax;
    if (opt_trials) cfg.sim.trials = *opt_trials;
    if (opt_seed) cfg.sim.seed = *opt_seed;
    if (opt_threads) cfg.sim.threads = *opt_threads;
    if (opt_window_km) {
      cfg.sim.window_radius = *opt_window_km * 1000.0;
      cfg.sim.horizon = cfg.sim.window_radius;
    }
    const ValidationReport vr = validate_params(cfg.env, cfg.net);
    if (!vr.ok()) {
      for (const auto& v : vr.violations) std::cerr << "config: " << v << "\n";
      return kExitConfigError;
    }

    if (*cmd_place) {
      const DeploymentPlan plan = build_deployment_plan(cfg.env, cfg.net);
      CsvTable t;
      t.comments = config_comments(cfg, invocation);
      t.header = {"ring", "R_n", "T_opt", "theta_opt_deg", "h_u", "R_u", "p_i"};
      for (const auto& r : plan.rings)
        t.rows.push_back({(long long)r.index, r.R_n, r.T_opt,
                          r.theta_opt * 180.0 / std::numbers::pi, r.h_u, r.R_u,
                          r.p_i});
      emit_table(t, out_path);
      return kExitOk;
    }

    if (*cmd_cov) {
      const bool analytic = cov_method == "analytic" || cov_method == "both";
      const bool simulate = cov_method == "simulate" || cov_method == "both";
      if (!analytic && !simulate)
        throw ConfigError("unknown coverage method: " + cov_method);
      const CoverageMethod am = parse_analytic_method(analytic_method);
      const DeploymentPlan plan = build_deployment_plan(cfg.env, cfg.net);

      CsvTable t;
      t.comments = config_comments(cfg, invocation);
      t.header = {"method", "gamma", "p_cov", "p_cov_tbs", "p_cov_aerial",
                  "p_cov_cluster", "tol"};
      if (simulate) {
        t.header.push_back("ci_low");
        t.header.push_back("ci_high");
      }
      auto pad = [&](std::vector<CsvCell> row) {
        while (row.size() < t.header.size()) row.emplace_back(std::string());
        t.rows.push_back(std::move(row));
      };
      if (analytic) {
        const CoverageResult r = coverage_probability(plan, cfg.sim, am);
        pad({std::string(method_name(am)), cfg.net.gamma, r.total, r.tbs,
             r.aerial, r.cluster, r.outer_rel_tol});
      }
      if (simulate) {
        const SimBreakdown sb = simulate_coverage(plan, cfg.sim);
        pad({std::string("simulate"), cfg.net.gamma, sb.coverage.estimate,
             sb.cov_tbs, sb.cov_aerial, sb.cov_cluster, sb.coverage.ci_half,
             sb.coverage.estimate - sb.coverage.ci_half,
             sb.coverage.estimate + sb.coverage.ci_half});
      }
      emit_table(t, out_path);
      return kExitOk;
    }

    if (*cmd_sweep) {
      SweepSettings sw;
      sw.param = sweep_param;
      sw.optimal_delta = optimal_delta;
      sw.do_analytic = sweep_method == "analytic" || sweep_method == "both";
      sw.do_sim = sweep_method == "simulate" || sweep_method == "both";
      if (!sw.do_analytic && !sw.do_sim)
        throw ConfigError("unknown sweep method: " + sweep_method);
      sw.method = parse_analytic_method(analytic_method);
      double default_step = 0;
      if (sw.param == "delta") default_step = 0.1;
      if (sw.param == "T_max") default_step = 10;
      if (sweep_values.empty()) {
        if (sw.param == "delta") sweep_values = "0.1..1.0";
        else if (sw.param == "T_max") sweep_values = "50..120";
        else throw ConfigError("--values required for param " + sw.param);
      }
      sw.values = parse_values(sweep_values, default_step);
      const std::vector<SweepRow> rows = run_sweep(cfg, sw);
      CsvTable t = sweep_table(rows, false, cfg.net.gamma);
      t.comments = config_comments(cfg, invocation);
      emit_table(t, out_path);
      return kExitOk;
    }

    if (*cmd_val) {
      const DeploymentPlan plan = build_deployment_plan(cfg.env, cfg.net);
      const DistanceLaws laws(plan, cfg.sim);
      OracleReport rep = empirical_oracles(laws, val_samples);
      // Partition of unity over the association masses.
      const Association assoc(laws);
      const auto m = assoc.masses(1e-4);
      rep.checks.push_back({"mass-partition", std::abs(m.sum() - 1.0), 1e-3});
      int failures = 0;
      for (const auto& c : rep.checks) {
        if (!c.pass()) ++failures;
        std::cout << (c.pass() ? "[PASS] " : "[FAIL] ") << c.name
                  << " gap=" << format_double(c.gap)
                  << " tol=" << format_double(c.tolerance) << "\n";
      }
      std::cout << (failures == 0 ? "all checks passed"
                                  : std::to_string(failures) + " checks failed")
                << " (" << rep.checks.size() << " total)\n";
      return failures == 0 ? kExitOk : kExitValidationFailure;
    }

    if (*cmd_rep) return reproduce_figure(figure, cfg, out_path, invocation);

    throw ConfigError("no subcommand given");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tuav
