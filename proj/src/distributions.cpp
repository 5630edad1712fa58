#include "tuav/distributions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tuav/channel.hpp"

namespace tuav {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kMassPanels = 1024;   // LoS mass cumulative per ring
constexpr int kDensityPanels = 4096; // weighted-density nodes per branch

double clamp01(double v) { return std::clamp(v, -1.0, 1.0); }

// Horizontal distance between a uniform in-disk user and the platform,
// CDF branch for R_0 - R_u <= r <= R_0 + R_u (verbatim transcription).
double branch_cdf(double r, double Ru, double R0) {
  const double t2 = std::acos(clamp01((R0 * R0 + Ru * Ru - r * r) / (2.0 * R0 * Ru)));
  const double s2 = std::sin(t2);
  const double g = r * r - Ru * Ru * s2 * s2;
  const double inv = 1.0 / (2.0 * kPi * R0 * R0);
  return t2 / kPi +
         inv * (-2.0 * r * r * std::asin(clamp01(s2 * Ru / r)) -
                2.0 * s2 * Ru * std::sqrt(std::max(g, 0.0))) +
         inv * (-std::sin(2.0 * t2) * Ru * Ru - 2.0 * t2 * r * r +
                2.0 * kPi * r * r);
}

// Compact equivalent of the branch PDF; also the limit value used where the
// verbatim derivative is removably singular (sin(theta_2) -> 0).
double branch_pdf_compact(double r, double Ru, double R0) {
  const double c = (Ru * Ru + r * r - R0 * R0) / (2.0 * Ru * r);
  return 2.0 * r / (kPi * R0 * R0) * std::acos(clamp01(c));
}

// Verbatim transcription of the printed branch PDF.
double branch_pdf_verbatim(double r, double Ru, double R0) {
  const double t2 = std::acos(clamp01((R0 * R0 + Ru * Ru - r * r) / (2.0 * R0 * Ru)));
  const double s2 = std::sin(t2);
  if (s2 < 1e-9) return branch_pdf_compact(r, Ru, R0);
  const double R02 = R0 * R0;
  const double q = R02 + Ru * Ru - r * r;
  const double inv = 1.0 / (2.0 * kPi * R02);
  const double t1 =
      inv * ((-2.0 * r * r * (q / (2.0 * R02 * Ru * s2) - Ru * s2 / (r * r))) /
                 std::sqrt(std::max(1.0 - (Ru * s2 / r) * (Ru * s2 / r), 1e-300)) -
             4.0 * r * std::asin(clamp01(Ru * s2 / r)));
  const double t2term =
      inv * ((-r * q * std::sqrt(std::max(r * r - Ru * Ru * s2 * s2, 0.0))) /
                 (R02 * Ru * s2) -
             ((2.0 * r - r * q / R02) * s2) /
                 std::sqrt(std::max(r * r / (Ru * Ru) - s2 * s2, 1e-300)));
  const double t3 =
      inv * (-2.0 * Ru * r * std::cos(2.0 * t2) / (R0 * s2) - 4.0 * r * t2 -
             2.0 * r * r * r / (R0 * Ru * s2) + 4.0 * kPi * r);
  return t1 + t2term + t3 + r / (kPi * R0 * Ru * s2);
}

}  // namespace

struct DistanceLaws::RingTables {
  double h = 0, Ru = 0;
  double d_lo = 0, d_hi = 0;      // euclidean support of the cluster law
  double x_joint = 0;             // euclidean image of the CDF branch point
  double horiz_horizon = 0;
  InterpTable los_mass;           // int_0^x z p_L(z,h) dz on [0, horiz_horizon]
  InterpTable pl;                 // p_L(z,h) on [0, horiz_horizon], hot-loop cache
  InterpTable w_los, w_nlos;      // weighted cluster densities on support
  InterpTable G_los, G_nlos;      // their cumulatives
  bool closed_form_ok = true;
};

struct DistanceLaws::Tables {
  std::vector<RingTables> rings;
};

namespace {

// Cluster euclidean density f_{D}(x) for one ring, exact closed form.
double euclid_pdf_exact(double x, double h, double Ru, double R0,
                        bool closed_form) {
  if (x <= h) return 0.0;
  const double r = std::sqrt(x * x - h * h);
  if (r >= R0 + Ru) return 0.0;
  if (Ru < 1e-9 * R0 || r < R0 - Ru) return 2.0 * x / (R0 * R0);
  const double horiz = closed_form ? branch_pdf_verbatim(r, Ru, R0)
                                   : branch_pdf_compact(r, Ru, R0);
  return horiz * x / r;
}

}  // namespace

DistanceLaws::DistanceLaws(const DeploymentPlan& plan, const SimulationParams& sim)
    : plan_(plan), sim_(sim) {
  const int N = int(plan.rings.size());
  if (N == 0) throw std::invalid_argument("DistanceLaws: empty plan");
  auto tables = std::make_shared<Tables>();
  tables->rings.resize(N);
  const double R0 = plan.net.R_0;
  for (int i = 0; i < N; ++i) {
    RingTables& rt = tables->rings[i];
    rt.h = plan.rings[i].h_u;
    rt.Ru = plan.rings[i].R_u;
    rt.d_lo = rt.h;
    rt.d_hi = std::sqrt((R0 + rt.Ru) * (R0 + rt.Ru) + rt.h * rt.h);
    rt.x_joint = std::sqrt(std::max(R0 - rt.Ru, 0.0) * std::max(R0 - rt.Ru, 0.0) +
                           rt.h * rt.h);
    if (sim.horizon <= rt.d_hi)
      throw std::invalid_argument(
          "DistanceLaws: horizon must exceed the cluster-platform reach");
    rt.horiz_horizon = std::sqrt(sim.horizon * sim.horizon - rt.h * rt.h);

    const EnvironmentProfile& env = plan.env;
    const double h = rt.h;
    rt.los_mass = build_cumulative_table(
        [&](double z) { return z * los_probability(z, h, env); }, 0.0,
        rt.horiz_horizon, kMassPanels);

    {
      // Dense uniform cache of p_L(z, h) for the interference integrands;
      // interpolation error ~1e-7, far below the quadrature tolerances.
      constexpr int nP = 4096;
      std::vector<double> zx(nP + 1), zy(nP + 1);
      for (int k = 0; k <= nP; ++k) {
        zx[k] = rt.horiz_horizon * double(k) / nP;
        zy[k] = los_probability(zx[k], h, env);
      }
      rt.pl = InterpTable(std::move(zx), std::move(zy));
    }

    // Validate the verbatim branch PDF against centered differences of the
    // CDF before freezing it into the weighted-density tables.
    rt.closed_form_ok = true;
    if (rt.Ru > 1e-9 * R0) {
      const double lo = R0 - rt.Ru, hi = R0 + rt.Ru;
      const double step = 1e-5 * R0;
      for (int k = 1; k < 64 && rt.closed_form_ok; ++k) {
        const double r = lo + (hi - lo) * k / 64.0;
        if (r - step <= lo || r + step >= hi) continue;
        const double fd =
            (branch_cdf(r + step, rt.Ru, R0) - branch_cdf(r - step, rt.Ru, R0)) /
            (2.0 * step);
        if (std::abs(branch_pdf_verbatim(r, rt.Ru, R0) - fd) > 1e-4)
          rt.closed_form_ok = false;
      }
    }

    const bool cf = rt.closed_form_ok;
    const double Ru = rt.Ru;
    auto wl = [&, h, Ru, cf](double x) {
      const double r = std::sqrt(std::max(x * x - h * h, 0.0));
      return los_probability(r, h, env) * euclid_pdf_exact(x, h, Ru, R0, cf);
    };
    auto wn = [&, h, Ru, cf](double x) {
      const double r = std::sqrt(std::max(x * x - h * h, 0.0));
      return (1.0 - los_probability(r, h, env)) *
             euclid_pdf_exact(x, h, Ru, R0, cf);
    };
    // Node layout splits at the branch joint so the kink sits on a node.
    std::vector<double> xs;
    const bool two_branch = rt.x_joint < rt.d_hi - 1e-12 * rt.d_hi &&
                            rt.x_joint > rt.d_lo + 1e-12;
    if (two_branch) {
      for (int k = 0; k <= kDensityPanels; ++k)
        xs.push_back(rt.d_lo + (rt.x_joint - rt.d_lo) * k / kDensityPanels);
      for (int k = 1; k <= kDensityPanels; ++k)
        xs.push_back(rt.x_joint + (rt.d_hi - rt.x_joint) * k / kDensityPanels);
    } else {
      for (int k = 0; k <= 2 * kDensityPanels; ++k)
        xs.push_back(rt.d_lo + (rt.d_hi - rt.d_lo) * k / (2 * kDensityPanels));
    }
    const size_t M = xs.size();
    std::vector<double> yl(M), yn(M), Gl(M), Gn(M);
    for (size_t k = 0; k < M; ++k) {
      yl[k] = wl(xs[k]);
      yn[k] = wn(xs[k]);
    }
    Gl[0] = Gn[0] = 0;
    for (size_t k = 0; k + 1 < M; ++k) {
      double v, err;
      detail::gk15(wl, xs[k], xs[k + 1], v, err);
      Gl[k + 1] = Gl[k] + v;
      detail::gk15(wn, xs[k], xs[k + 1], v, err);
      Gn[k + 1] = Gn[k] + v;
    }
    rt.G_los = InterpTable(xs, Gl, yl);
    rt.G_nlos = InterpTable(xs, Gn, yn);
    rt.w_los = InterpTable(xs, std::move(yl));
    rt.w_nlos = InterpTable(std::move(xs), std::move(yn));
  }
  tables_ = std::move(tables);
}

DistanceLaws DistanceLaws::rebind(const NetworkParams& net,
                                  const RingProbabilities& rp) const {
  if (net.R_0 != plan_.net.R_0 || net.N != plan_.net.N ||
      net.T_max != plan_.net.T_max)
    throw std::logic_error("rebind: placement geometry changed; rebuild instead");
  DistanceLaws out = *this;
  out.plan_.net = net;
  out.plan_.p_out = rp.p_out;
  for (size_t i = 0; i < out.plan_.rings.size(); ++i)
    out.plan_.rings[i].p_i = rp.p[i];
  return out;
}

const DistanceLaws::RingTables& DistanceLaws::rt(int ring) const {
  return tables_->rings.at(ring - 1);
}

double DistanceLaws::altitude(int ring) const { return rt(ring).h; }
double DistanceLaws::offset(int ring) const { return rt(ring).Ru; }
double DistanceLaws::euclid_min(int ring) const { return rt(ring).d_lo; }
double DistanceLaws::euclid_max(int ring) const { return rt(ring).d_hi; }
double DistanceLaws::horiz_horizon(int ring) const { return rt(ring).horiz_horizon; }
bool DistanceLaws::closed_form_pdf_valid(int ring) const {
  return rt(ring).closed_form_ok;
}

double DistanceLaws::ring_density(int ring) const {
  return 2.0 * kPi * plan_.rings[ring - 1].p_i * plan_.net.delta *
         plan_.net.lambda_C;
}

double DistanceLaws::los_mass(int ring, double x) const {
  return rt(ring).los_mass(x);
}

double DistanceLaws::nlos_mass(int ring, double x) const {
  const RingTables& t = rt(ring);
  const double xc = std::clamp(x, 0.0, t.horiz_horizon);
  return 0.5 * xc * xc - t.los_mass(xc);
}

double DistanceLaws::lambda_los(int ring, double x) const {
  return ring_density(ring) * los_mass(ring, x);
}

double DistanceLaws::lambda_nlos(int ring, double x) const {
  return ring_density(ring) * nlos_mass(ring, x);
}

double DistanceLaws::nearest_cdf(StationKind k, int ring, double d) const {
  if (k == StationKind::TBS) {
    const double dc = std::min(std::max(d, 0.0), sim_.horizon);
    return 1.0 - std::exp(-kPi * plan_.net.lambda_T * dc * dc);
  }
  const RingTables& t = rt(ring);
  if (d <= t.h) return 0.0;
  const double dc = std::min(d, sim_.horizon);
  const double x = std::sqrt(std::max(dc * dc - t.h * t.h, 0.0));
  const double mass = (k == StationKind::AerialLoS) ? los_mass(ring, x)
                                                    : nlos_mass(ring, x);
  return 1.0 - std::exp(-ring_density(ring) * mass);
}

double DistanceLaws::nearest_pdf(StationKind k, int ring, double d) const {
  if (k == StationKind::TBS) {
    if (d <= 0 || d > sim_.horizon) return 0.0;
    const double lt = plan_.net.lambda_T;
    return 2.0 * kPi * lt * d * std::exp(-kPi * lt * d * d);
  }
  const RingTables& t = rt(ring);
  if (d <= t.h || d > sim_.horizon) return 0.0;
  const double x = std::sqrt(d * d - t.h * t.h);
  const double pl = los_probability(x, t.h, plan_.env);
  const double dens = ring_density(ring);
  if (k == StationKind::AerialLoS)
    return dens * d * pl * std::exp(-dens * los_mass(ring, x));
  return dens * d * (1.0 - pl) * std::exp(-dens * nlos_mass(ring, x));
}

double DistanceLaws::los_prob_fast(int ring, double z) const {
  return rt(ring).pl(z);
}

double DistanceLaws::nearest_tail_cut(StationKind k, int ring, double tail) const {
  const double H = sim_.horizon;
  const double lo0 = (k == StationKind::TBS) ? 0.0 : rt(ring).h;
  const double total = nearest_cdf(k, ring, H);
  if (total <= tail) return lo0;
  const double target = total - tail;
  double lo = lo0, hi = H;
  while (hi - lo > 1e-6 * (1.0 + hi)) {
    const double mid = 0.5 * (lo + hi);
    (nearest_cdf(k, ring, mid) >= target ? hi : lo) = mid;
  }
  return hi;
}

double DistanceLaws::cluster_horizontal_cdf(int ring, double r) const {
  const RingTables& t = rt(ring);
  const double R0 = plan_.net.R_0;
  if (r <= 0) return 0.0;
  if (t.Ru < 1e-9 * R0) return std::min(r * r / (R0 * R0), 1.0);
  if (r <= R0 - t.Ru) return r * r / (R0 * R0);
  if (r >= R0 + t.Ru) return 1.0;
  return branch_cdf(r, t.Ru, R0);
}

double DistanceLaws::cluster_horizontal_pdf(int ring, double r) const {
  const RingTables& t = rt(ring);
  const double R0 = plan_.net.R_0;
  if (r <= 0 || r >= R0 + t.Ru) return 0.0;
  if (t.Ru < 1e-9 * R0) return (r < R0) ? 2.0 * r / (R0 * R0) : 0.0;
  if (r < R0 - t.Ru) return 2.0 * r / (R0 * R0);
  if (t.closed_form_ok) return branch_pdf_verbatim(r, t.Ru, R0);
  // Fallback: centered finite differences of the CDF.
  const double step = 1e-5 * R0;
  const double lo = std::max(r - step, 0.0), hi = std::min(r + step, R0 + t.Ru);
  return (cluster_horizontal_cdf(ring, hi) - cluster_horizontal_cdf(ring, lo)) /
         (hi - lo);
}

double DistanceLaws::cluster_euclid_cdf(int ring, double d) const {
  const RingTables& t = rt(ring);
  if (d <= t.h) return 0.0;
  return cluster_horizontal_cdf(ring, std::sqrt(d * d - t.h * t.h));
}

double DistanceLaws::cluster_euclid_pdf(int ring, double d) const {
  const RingTables& t = rt(ring);
  return euclid_pdf_exact(d, t.h, t.Ru, plan_.net.R_0, t.closed_form_ok);
}

double DistanceLaws::weighted_density(bool los, int ring, double x) const {
  const RingTables& t = rt(ring);
  if (x <= t.d_lo || x >= t.d_hi) return 0.0;
  return los ? t.w_los(x) : t.w_nlos(x);
}

double DistanceLaws::weighted_tail(bool los, int ring, double lower) const {
  const RingTables& t = rt(ring);
  const InterpTable& G = los ? t.G_los : t.G_nlos;
  if (lower >= t.d_hi) return 0.0;
  const double head = (lower <= t.d_lo) ? 0.0 : G(lower);
  return std::max(G.back_y() - head, 0.0);
}

}  // namespace tuav
