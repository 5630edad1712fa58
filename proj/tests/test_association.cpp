// Tests for strongest-mean-power association: exclusion radii between
// station classes, conditional serving probabilities, the own-cluster
// bracket, and the per-class association masses. Frozen constants come from
// an independent numerical evaluation (scripted in Python with scipy
// quadrature).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"
#include "tuav/association.hpp"
#include "tuav/channel.hpp"
#include "tuav/distributions.hpp"
#include "tuav/params.hpp"

using namespace tuav;
using testsup::kPi;

namespace {

const std::vector<Serving> kServings = {Serving::TBS, Serving::AerialLoS,
                                        Serving::AerialNLoS, Serving::ClusterLoS,
                                        Serving::ClusterNLoS};

}  // namespace

TEST_CASE("exclusion radii") {
  const DeploymentPlan plan = testsup::two_ring_plan();
  const DistanceLaws laws(plan, SimulationParams{});
  const Association assoc(laws);

  // Frozen cross-class radii (urban powers: TBS 10*0.1, LoS 1*0.4,
  // NLoS 1*0.005).
  CHECK(assoc.raw_exclusion_distance(Serving::AerialLoS, StationKind::TBS,
                                     100.0) ==
        doctest::Approx(29.2401773821).epsilon(1e-8));
  CHECK(assoc.raw_exclusion_distance(Serving::AerialNLoS,
                                     StationKind::AerialLoS, 100.0) ==
        doctest::Approx(8944.2719099992).epsilon(1e-8));

  // Equal-power same-exponent pairs exclude exactly their own distance.
  for (double r : {1.0, 57.0, 400.0}) {
    CHECK(assoc.raw_exclusion_distance(Serving::TBS, StationKind::TBS, r) ==
          doctest::Approx(r).epsilon(1e-14));
    CHECK(assoc.raw_exclusion_distance(Serving::AerialLoS,
                                       StationKind::AerialLoS, r) ==
          doctest::Approx(r).epsilon(1e-14));
    CHECK(assoc.raw_exclusion_distance(Serving::AerialNLoS,
                                       StationKind::AerialNLoS, r) ==
          doctest::Approx(r).epsilon(1e-14));
    // The own-cluster platform shares the aerial power law.
    CHECK(assoc.raw_exclusion_distance(Serving::ClusterLoS,
                                       StationKind::AerialLoS, r) ==
          doctest::Approx(r).epsilon(1e-14));
  }

  // Frozen floor threshold at altitude 30 m (serving terrestrial vs LoS).
  {
    const DeploymentPlan low =
        testsup::single_ring_plan(200.0, 50.0, 30.0, urban_preset());
    const DistanceLaws ll(low, SimulationParams{});
    const Association la(ll);
    CHECK(la.floor_threshold(Serving::TBS, StationKind::AerialLoS, 1) ==
          doctest::Approx(13.1037069710).epsilon(1e-8));
  }

  // The floor threshold is exactly where the raw radius crosses the ring
  // altitude, for every serving/other/ring combination.
  for (Serving s : kServings) {
    for (StationKind o : {StationKind::AerialLoS, StationKind::AerialNLoS}) {
      for (int ring = 1; ring <= 2; ++ring) {
        const double rstar = assoc.floor_threshold(s, o, ring);
        CHECK(assoc.raw_exclusion_distance(s, o, rstar) ==
              doctest::Approx(laws.altitude(ring)).epsilon(1e-10));
        // Below the threshold the floor binds; above, the raw value rules.
        CHECK(assoc.exclusion_distance(s, o, ring, 0.5 * rstar) ==
              laws.altitude(ring));
        const double above = 2.0 * rstar;
        CHECK(assoc.exclusion_distance(s, o, ring, above) ==
              assoc.raw_exclusion_distance(s, o, above));
      }
    }
    // Terrestrial interferers get no altitude floor.
    CHECK(assoc.floor_threshold(s, StationKind::TBS, 1) == 0.0);
    CHECK(assoc.exclusion_distance(s, StationKind::TBS, 1, 3.0) ==
          assoc.raw_exclusion_distance(s, StationKind::TBS, 3.0));
  }

  // Monotone nondecreasing in the serving distance.
  for (Serving s : kServings) {
    for (StationKind o : {StationKind::TBS, StationKind::AerialLoS,
                          StationKind::AerialNLoS}) {
      double prev = 0.0;
      for (double r : {1.0, 10.0, 50.0, 120.0, 500.0}) {
        const double e = assoc.exclusion_distance(s, o, 1, r);
        CHECK(e >= prev);
        prev = e;
      }
    }
  }
}

TEST_CASE("conditional serving probabilities") {
  const DeploymentPlan plan = testsup::two_ring_plan();
  const DistanceLaws laws(plan, SimulationParams{});
  const Association assoc(laws);

  // Frozen chain values.
  CHECK(assoc.prob_tbs(150.0) == doctest::Approx(0.1274423892).epsilon(1e-6));
  CHECK(assoc.prob_aerial(true, 1, 120.0) ==
        doctest::Approx(0.6030344425).epsilon(1e-6));
  CHECK(assoc.prob_cluster_mix(1, 90.0) ==
        doctest::Approx(0.7839926127).epsilon(1e-6));
  // A NLoS candidate at 200 m is essentially always beaten.
  CHECK(assoc.prob_aerial(false, 2, 200.0) < 1e-9);
  CHECK(assoc.prob_aerial(false, 2, 200.0) >= 0.0);

  // Bounded and decreasing in the candidate distance.
  double prev_t = 1.1, prev_a = 1.1;
  for (double r : {5.0, 30.0, 90.0, 200.0, 600.0, 2000.0}) {
    const double pt = assoc.prob_tbs(r);
    const double pa = assoc.prob_aerial(true, 1, std::max(r, laws.altitude(1) + 1.0));
    CHECK(pt >= 0.0);
    CHECK(pt <= 1.0);
    CHECK(pa >= 0.0);
    CHECK(pa <= 1.0);
    CHECK(pt <= prev_t);
    CHECK(pa <= prev_a);
    prev_t = pt;
    prev_a = pa;
  }

  // The cluster mixture is the exact LoS-probability blend of the two
  // conditional probabilities, and vanishes below the ring altitude.
  for (int ring = 1; ring <= 2; ++ring) {
    const double h = laws.altitude(ring);
    for (double r : {h + 5.0, h + 40.0, h + 150.0}) {
      const double x = std::sqrt(r * r - h * h);
      const double pl = los_probability(x, h, plan.env);
      CHECK(assoc.prob_cluster_mix(ring, r) ==
            doctest::Approx(pl * assoc.prob_cluster(true, ring, r) +
                            (1.0 - pl) * assoc.prob_cluster(false, ring, r))
                .epsilon(1e-14));
    }
    CHECK(assoc.prob_cluster_mix(ring, 0.5 * h) == 0.0);
  }
}

TEST_CASE("own-cluster bracket") {
  const DeploymentPlan plan = testsup::two_ring_plan();
  const DistanceLaws laws(plan, SimulationParams{});
  const Association assoc(laws);

  // Mixture weights partition unity; at full activation they equal the ring
  // occupancy probabilities.
  CHECK(assoc.weight_out() + assoc.weight_ring(1) + assoc.weight_ring(2) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(assoc.weight_ring(1) == doctest::Approx(plan.rings[0].p_i).epsilon(1e-15));
  CHECK(assoc.weight_ring(2) == doctest::Approx(plan.rings[1].p_i).epsilon(1e-15));
  CHECK(assoc.weight_out() == doctest::Approx(plan.p_out).epsilon(1e-15));

  // Survival is the weighted tail beyond the raw exclusion radii, and the
  // bracket is its q-weighted assembly.
  for (Serving s : kServings) {
    for (double r : {20.0, 80.0, 150.0}) {
      double b = assoc.weight_out();
      for (int ring = 1; ring <= 2; ++ring) {
        const double rawL =
            assoc.raw_exclusion_distance(s, StationKind::AerialLoS, r);
        const double rawN =
            assoc.raw_exclusion_distance(s, StationKind::AerialNLoS, r);
        const double surv = laws.weighted_tail(true, ring, rawL) +
                            laws.weighted_tail(false, ring, rawN);
        CHECK(assoc.cluster_survival(ring, s, r) ==
              doctest::Approx(surv).epsilon(1e-14));
        b += assoc.weight_ring(ring) * assoc.cluster_survival(ring, s, r);
      }
      CHECK(assoc.cluster_bracket(s, r) == doctest::Approx(b).epsilon(1e-14));
    }

    // A server at distance ~0 is never beaten by the cluster platform; a
    // remote one always is, leaving only the absent weight.
    CHECK(assoc.cluster_bracket(s, 1e-6) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(assoc.cluster_bracket(s, 5000.0) ==
          doctest::Approx(assoc.weight_out()).epsilon(1e-12));
  }
}

TEST_CASE("ring-weighted mixture density") {
  const DeploymentPlan plan = testsup::two_ring_plan();
  const DistanceLaws laws(plan, SimulationParams{});
  const Association assoc(laws);

  REQUIRE(assoc.has_mix());
  CHECK(assoc.mix_lo() ==
        std::min(laws.euclid_min(1), laws.euclid_min(2)));
  CHECK(assoc.mix_hi() ==
        std::max(laws.euclid_max(1), laws.euclid_max(2)));
  CHECK(assoc.mixed_density(true, assoc.mix_lo()) == 0.0);
  CHECK(assoc.mixed_density(true, assoc.mix_hi() + 1.0) == 0.0);

  for (bool los : {true, false}) {
    for (int i = 1; i < 500; ++i) {
      const double x =
          assoc.mix_lo() + (assoc.mix_hi() - assoc.mix_lo()) * i / 500.0;
      const double direct =
          assoc.weight_ring(1) * laws.weighted_density(los, 1, x) +
          assoc.weight_ring(2) * laws.weighted_density(los, 2, x);
      CHECK(std::abs(assoc.mixed_density(los, x) - direct) < 1e-7);
    }
  }
}

TEST_CASE("association masses partition unity") {
  const DeploymentPlan plan = testsup::two_ring_plan();
  const DistanceLaws laws(plan, SimulationParams{});
  const Association assoc(laws);

  const Association::Masses m = assoc.masses(1e-7);
  REQUIRE(m.aerial_los.size() == 2);

  // Frozen chain values. The second-ring cluster mass carries the table
  // resolution limit of its wide outer support branch, hence the looser
  // bound there.
  CHECK(m.tbs == doctest::Approx(0.1579403172).epsilon(1e-6));
  CHECK(m.aerial_los[0] == doctest::Approx(0.2464483734).epsilon(1e-6));
  CHECK(m.aerial_los[1] == doctest::Approx(0.3914225303).epsilon(1e-6));
  CHECK(m.cluster[0] == doctest::Approx(0.0817055035).epsilon(1e-6));
  CHECK(m.cluster[1] == doctest::Approx(0.1224832969).epsilon(2e-4));
  CHECK(m.aerial_nlos[0] < 1e-8);
  CHECK(m.aerial_nlos[1] < 1e-8);
  CHECK(std::abs(m.sum() - 1.0) < 1e-4);
}

TEST_CASE("degenerate association regimes") {
  const DeploymentPlan plan = testsup::two_ring_plan();
  const DistanceLaws laws(plan, SimulationParams{});
  const RingProbabilities rp = testsup::ring_probs_of(plan);

  // No active platforms: the terrestrial station always wins.
  {
    NetworkParams net = plan.net;
    net.delta = 0.0;
    const DistanceLaws off = laws.rebind(net, rp);
    const Association a(off);
    CHECK(a.weight_out() == 1.0);
    for (double r : {10.0, 100.0, 1000.0}) CHECK(a.prob_tbs(r) == 1.0);
    const Association::Masses m = a.masses(1e-6);
    CHECK(m.tbs == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(m.aerial_los[0] == 0.0);
    CHECK(m.aerial_los[1] == 0.0);
    CHECK(m.cluster[0] == 0.0);
    CHECK(m.cluster[1] == 0.0);
  }

  // An absurdly dense terrestrial field smothers every aerial candidate.
  {
    NetworkParams net = plan.net;
    net.lambda_T = 1.0;
    const DistanceLaws dense = laws.rebind(net, rp);
    const Association a(dense);
    CHECK(a.prob_aerial(true, 1, 120.0) < 1e-12);
    CHECK(a.prob_aerial(false, 2, 200.0) < 1e-12);
    CHECK(a.prob_cluster_mix(1, 90.0) < 1e-12);
  }

  // No terrestrial field: its mass drops out and the rest still partitions.
  {
    NetworkParams net = plan.net;
    net.lambda_T = 0.0;
    const DistanceLaws none = laws.rebind(net, rp);
    const Association a(none);
    const Association::Masses m = a.masses(1e-6);
    CHECK(m.tbs == 0.0);
    CHECK(std::abs(m.sum() - 1.0) < 1e-4);
  }
}
