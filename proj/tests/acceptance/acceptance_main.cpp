// End-to-end acceptance checks. Each criterion prints one [PASS]/[FAIL]
// line; the exit code is the number of failed criteria. Heavier scenario
// artifacts (per-state contact graphs, day-long plans) are cached and shared
// between criteria so the suite stays within its time budgets.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "jcpd/matching.hpp"
#include "jcpd/metrics.hpp"
#include "jcpd/potentials.hpp"
#include "jcpd/runner.hpp"
#include "jcpd/scenario_config.hpp"
#include "jcpd/scheduler.hpp"
#include "jcpd/visibility.hpp"

using namespace jcpd;
namespace fs = std::filesystem;

namespace {

const char* kBaseConfig = R"json({
  "name": "default",
  "algorithm": "jcpd",
  "seed": 1,
  "group": "group1",
  "clock": { "fsa_state_s": 360, "long_slot_s": 9, "short_slot_s": 3 },
  "horizon_s": 604800,
  "constellation": {
    "walker": { "count": 24, "planes": 3, "phasing": 1, "altitude_km": 21528.0, "inclination_deg": 55.0 },
    "igso": [
      { "name": "IGSO1", "lon_deg": 118.0, "phase_deg": 0.0, "inclination_deg": 55.0 },
      { "name": "IGSO2", "lon_deg": 118.0, "phase_deg": 120.0, "inclination_deg": 55.0 },
      { "name": "IGSO3", "lon_deg": 118.0, "phase_deg": 240.0, "inclination_deg": 55.0 }
    ],
    "geo": [
      { "name": "GEO1", "lon_deg": 80.0 },
      { "name": "GEO2", "lon_deg": 110.5 },
      { "name": "GEO3", "lon_deg": 140.0 }
    ],
    "geo_igso_altitude_km": 35786.0,
    "lp": [
      { "name": "L3", "point": "L3" },
      { "name": "L4", "point": "L4" },
      { "name": "L5", "point": "L5" },
      { "name": "DRO", "point": "DRO", "dro_radius_km": 70000.0 }
    ]
  },
  "ground_stations": [
    { "name": "GS_Jiamusi", "lat_deg": 46.8, "lon_deg": 130.3 },
    { "name": "GS_Kashi", "lat_deg": 39.47, "lon_deg": 75.99 },
    { "name": "GS_Sanya", "lat_deg": 18.23, "lon_deg": 109.02 }
  ],
  "users": { "count": 48, "links_per_state": 4, "jitter_deg": 0.0 },
  "pointing": {
    "meo_half_cone_deg": 60.0,
    "geo_igso_half_cone_deg": 45.0,
    "lp_half_cone_deg": 75.0,
    "gs_half_cone_deg": 85.0,
    "user_half_cone_deg": 180.0
  },
  "visibility": { "sample_step_s": 3.0, "occlusion_margin_km": 0.0 },
  "output": { "directory": "out", "write_plan": true, "export_topology": false }
})json";

constexpr std::int64_t kDayS = 86400;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path work_root() { return fs::temp_directory_path() / "jcpd_acceptance"; }

ScenarioConfig config_with(std::int64_t users, const std::string& group, Algorithm alg,
                           std::int64_t horizon_s) {
  ScenarioConfig cfg = ScenarioConfig::from_json_text(kBaseConfig);
  cfg.apply_override("users.count=" + std::to_string(users));
  cfg.apply_override("group=" + group);
  cfg.apply_override(std::string("algorithm=") + to_string(alg));
  cfg.apply_override("horizon_s=" + std::to_string(horizon_s));
  return cfg;
}

// Day-long per-state contact graphs by user count, computed once.
const TopologyFileSource& topo_for(std::int64_t users) {
  static std::map<std::int64_t, std::unique_ptr<TopologyFileSource>> cache;
  auto it = cache.find(users);
  if (it == cache.end()) {
    Scenario sc = config_with(users, "group1", Algorithm::Jcpd, kDayS).build();
    VisibilityEngine eng(sc.roster, sc.ephemeris, sc.clock, sc.visibility);
    std::map<std::int64_t, ContactGraph> graphs;
    for (std::int64_t s = 0; s < sc.horizon_states; ++s) graphs.emplace(s, eng.state_graph(s));
    it = cache.emplace(users, std::make_unique<TopologyFileSource>(std::move(graphs))).first;
  }
  return *it->second;
}

struct DayRun {
  Scenario sc;
  ContactPlan plan;
  MetricsReport metrics;
};

const DayRun& day_run(std::int64_t users, const std::string& group, Algorithm alg) {
  static std::map<std::string, std::unique_ptr<DayRun>> cache;
  const std::string key =
      std::to_string(users) + "/" + group + "/" + to_string(alg);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto run = std::make_unique<DayRun>();
    run->sc = config_with(users, group, alg, kDayS).build();
    run->plan = run_scenario(run->sc, topo_for(users));
    run->metrics = compute_metrics(run->plan, run->sc);
    it = cache.emplace(key, std::move(run)).first;
  }
  return *it->second;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_links(const std::vector<PlanLink>& a, const std::vector<PlanLink>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].a != b[i].a || a[i].b != b[i].b || a[i].type != b[i].type ||
        a[i].weight != b[i].weight)
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// 1. The blossom matcher agrees exactly with exhaustive search on a thousand
//    random graphs (<= 12 nodes, integer weights in [-10, 10]) within 10 s.
bool check_matching_oracle(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(987654321u);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 11);
    WeightedGraph g;
    for (NodeId v = 0; v < n; ++v) g.add_node(v);
    std::map<std::pair<NodeId, NodeId>, double> weights;
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b)
        if (rng() % 2 == 0) {
          const double w = static_cast<double>(static_cast<int>(rng() % 21) - 10);
          g.add_edge(a, b, w);
          weights[{a, b}] = w;
        }

    const Matching fast = max_weight_matching(g);
    const Matching slow = brute_force_matching(g);
    if (fast.total_weight != slow.total_weight) {
      detail = "trial " + std::to_string(trial) + ": blossom total " +
               std::to_string(fast.total_weight) + " != exhaustive " +
               std::to_string(slow.total_weight);
      return false;
    }

    std::set<NodeId> seen;
    double sum = 0.0;
    for (const auto& pr : fast.pairs) {
      auto w = weights.find(pr);
      if (pr.first >= pr.second || w == weights.end() || w->second <= 0.0 ||
          !seen.insert(pr.first).second || !seen.insert(pr.second).second) {
        detail = "trial " + std::to_string(trial) + ": structurally invalid matching";
        return false;
      }
      sum += w->second;
    }
    if (sum != fast.total_weight) {
      detail = "trial " + std::to_string(trial) + ": total does not match its own pairs";
      return false;
    }
  }
  const double el = seconds_since(t0);
  if (el >= 10.0) {
    detail = "took " + std::to_string(el) + " s (budget 10 s)";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 2. Potential terms and edge weights reproduce hand-computed values exactly.
bool check_potential_hand_values(std::string& detail) {
  Roster r;
  const NodeId g1 = r.add({"g1", NodeClass::GnssSatellite, {}});
  const NodeId g2 = r.add({"g2", NodeClass::GnssSatellite, {}});
  const NodeId g3 = r.add({"g3", NodeClass::GnssSatellite, {}});
  const NodeId l1 = r.add({"l1", NodeClass::LpSatellite, {}});
  const NodeId l2 = r.add({"l2", NodeClass::LpSatellite, {}});
  const NodeId u1 = r.add({"u1", NodeClass::User, {}});
  r.add({"gs", NodeClass::GroundStation, {}});

  const PotentialParams p = PotentialParams::group1();
  ScheduleState st(r, p, {{u1, 4}});
  st.telemetry[static_cast<std::size_t>(g1)] = 3;
  st.telemetry[static_cast<std::size_t>(l1)] = 2;
  st.anchor[static_cast<std::size_t>(g2)] = 1;
  st.anchor[static_cast<std::size_t>(l2)] = 1;

  ContactGraph g;
  g.state_index = 0;
  g.node_count = r.size();
  g.anchor.assign(static_cast<std::size_t>(r.size()), 0);
  g.anchor[static_cast<std::size_t>(g2)] = 1;
  g.anchor[static_cast<std::size_t>(l2)] = 1;
  g.edges = {{g1, g2, LinkType::GnssGnss}, {g1, g3, LinkType::GnssGnss},
             {g1, l1, LinkType::GnssLp},   {l1, l2, LinkType::LpLp},
             {l1, u1, LinkType::LpUser}};
  g.rebuild_adjacency();

  struct Case {
    const char* what;
    double got;
    double want;
  };
  const Case cases[] = {
      // buffered telemetry D=3 pulled toward an anchor, per relay class
      {"comm gnss->gnss anchor", comm_potential(g1, g2, st, p), 200.0 * 3 * 7},
      {"comm gnss->lp anchor", comm_potential(g1, l2, st, p), 200.0 * 3 * 2},
      {"comm lp->gnss anchor", comm_potential(l1, g2, st, p), 100.0 * 2 * 5},
      {"comm from an anchor", comm_potential(g2, g1, st, p), 0.0},
      {"comm toward a non-anchor", comm_potential(g1, g3, st, p), 0.0},
      // seeded last contact clears the interval on the very first slot
      {"ranging gnss owner, lp pair", ranging_potential(g1, l1, 1, st, p),
       15.0 * 60 * 1 + 800},
      {"ranging lp owner", ranging_potential(l1, g1, 1, st, p), 20.0 * 5 * 1 + 500},
      {"ranging gnss pair", ranging_potential(g1, g3, 1, st, p), 15.0 * 60 * 1 + 800},
      {"user demand", user_potential(u1, l1, 1, st, p), 10.0 * 4 * 1 + 300},
      {"exclusion vs lp partner", exclusion_potential(g1, l1, 1, st, g, p),
       120.0 * (3 + 60) + 200},
      {"exclusion vs user partner", exclusion_potential(g1, u1, 1, st, g, p),
       150.0 * (3 + 60) + 100},
      // full edge weights
      {"lp-lp long edge", edge_weight_long(l1, l2, 1, st, g, p),
       100.0 * 2 * 5 + 0 + 600 + 600},
      {"gnss-lp long edge", edge_weight_long(g1, l1, 1, st, g, p), 1700.0 + 600 - 7760},
      {"lp-user long edge", edge_weight_long(l1, u1, 1, st, g, p), 340.0},
      {"gnss-gnss short edge", edge_weight_short(g1, g3, 1, st, p), 1700.0 + 1700},
  };
  for (const Case& c : cases) {
    if (c.got != c.want) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: got %.6f, expected %.6f", c.what, c.got, c.want);
      detail = buf;
      return false;
    }
  }

  // inside the effectiveness interval the ranging demand is zero
  st.set_last_contact(g1, l1, 1);
  if (ranging_potential(g1, l1, 21, st, p) != 0.0 ||
      ranging_potential(g1, l1, 22, st, p) == 0.0) {
    detail = "effectiveness interval boundary wrong";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 3. A one-day group1 run with 48 users violates no scheduling invariant:
//    matchings are valid and use real edges, GNSS satellites matched on the
//    long timescale never appear in the covered ShortSlots, anchors hold no
//    telemetry, users never exceed their per-state demand, and a manual
//    slot-by-slot drive reproduces the production run exactly.
bool check_schedule_invariants(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const DayRun& ref = day_run(48, "group1", Algorithm::Jcpd);
  const Scenario& sc = ref.sc;
  const TopologyFileSource& topo = topo_for(48);

  ScheduleState st(sc.roster, sc.params, sc.demands);
  std::vector<std::int64_t> eff(static_cast<std::size_t>(sc.roster.size()), 0);
  std::int64_t violations = 0;
  std::string first;
  auto flag = [&](const std::string& msg) {
    ++violations;
    if (first.empty()) first = msg;
  };

  const std::int64_t lps = sc.clock.longs_per_state();
  const std::int64_t spl = sc.clock.shorts_per_long();
  for (std::int64_t state = 0; state < sc.horizon_states; ++state) {
    const ContactGraph g = topo.state_graph(state);
    st.begin_state(g);
    if (!std::equal(g.anchor.begin(), g.anchor.end(), ref.plan.anchors[static_cast<std::size_t>(state)].begin()))
      flag("recorded anchors differ in state " + std::to_string(state));

    std::set<std::pair<NodeId, NodeId>> long_edges, short_edges;
    for (const ContactEdge& e : g.edges)
      (slot_unit(e.type) == SlotKind::Long ? long_edges : short_edges).emplace(e.a, e.b);

    for (std::int64_t ls = 0; ls < lps; ++ls) {
      const std::int64_t n = sc.clock.first_long_of_state(state) + ls;
      st.clock.state = state;
      st.clock.long_slot = n;
      st.clock.short_slot = sc.clock.first_short_of_long(n);
      accrue_telemetry(st, SlotKind::Long);
      for (NodeId v = 0; v < sc.roster.size(); ++v)
        if (g.anchor[static_cast<std::size_t>(v)] && st.telemetry[static_cast<std::size_t>(v)] != 0)
          flag("anchor " + sc.roster.name(v) + " accumulated telemetry");

      LongSlotResult res = long_slot_cpd(n, st, g, sc.params,
                                         sc.refresh_last_contact_on_repeat, &eff);

      std::vector<std::uint8_t> used(static_cast<std::size_t>(sc.roster.size()), 0);
      for (const PlanLink& ln : res.links) {
        if (long_edges.find({ln.a, ln.b}) == long_edges.end())
          flag("LongSlot " + std::to_string(n) + " matched a pair that is not a long edge");
        if (used[static_cast<std::size_t>(ln.a)]++ || used[static_cast<std::size_t>(ln.b)]++)
          flag("node matched twice in LongSlot " + std::to_string(n));
        if (!(ln.weight > 0.0)) flag("nonpositive weight matched in LongSlot " + std::to_string(n));
      }
      for (const UserDemand& d : sc.demands)
        if (st.user_got[static_cast<std::size_t>(d.user)] > d.links_per_state)
          flag("user " + sc.roster.name(d.user) + " served beyond demand");

      const SlotRecord& lref = ref.plan.long_slots[static_cast<std::size_t>(n - 1)];
      if (lref.slot != n || !same_links(lref.links, res.links))
        flag("LongSlot " + std::to_string(n) + " differs from the production run");

      const std::set<NodeId> busy(res.busy_gnss.begin(), res.busy_gnss.end());
      for (std::int64_t ss = 0; ss < spl; ++ss) {
        const std::int64_t k = sc.clock.first_short_of_long(n) + ss;
        st.clock.short_slot = k;
        accrue_telemetry(st, SlotKind::Short);
        ShortSlotResult sres = short_slot_cpd(k, st, g, res.busy_gnss, sc.params,
                                              sc.refresh_last_contact_on_repeat, &eff);
        std::vector<std::uint8_t> sused(static_cast<std::size_t>(sc.roster.size()), 0);
        for (const PlanLink& ln : sres.links) {
          if (short_edges.find({ln.a, ln.b}) == short_edges.end())
            flag("ShortSlot " + std::to_string(k) + " matched a pair that is not a short edge");
          if (busy.count(ln.a) || busy.count(ln.b))
            flag("GNSS satellite on a long link reused in ShortSlot " + std::to_string(k));
          if (sused[static_cast<std::size_t>(ln.a)]++ || sused[static_cast<std::size_t>(ln.b)]++)
            flag("node matched twice in ShortSlot " + std::to_string(k));
        }
        const SlotRecord& sref = ref.plan.short_slots[static_cast<std::size_t>(k - 1)];
        if (sref.slot != k || !same_links(sref.links, sres.links))
          flag("ShortSlot " + std::to_string(k) + " differs from the production run");
      }
    }
  }
  if (eff != ref.plan.effective_ranging_total)
    flag("replayed effective-ranging totals differ from the production run");

  const double el = seconds_since(t0);
  if (violations > 0) {
    detail = std::to_string(violations) + " violation(s); first: " + first;
    return false;
  }
  if (el >= 180.0) {
    detail = "took " + std::to_string(el) + " s (budget 180 s)";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 4. Slot arithmetic is exact on the reference clock.
bool check_clock_arithmetic(std::string& detail) {
  const SlotClock c{360, 9, 3};
  struct Case {
    const char* what;
    std::int64_t got;
    std::int64_t want;
  };
  const Case cases[] = {
      {"longs per state", c.longs_per_state(), 40},
      {"shorts per long", c.shorts_per_long(), 3},
      {"shorts per state", c.shorts_per_state(), 120},
      {"first long of state 0", c.first_long_of_state(0), 1},
      {"first long of state 2", c.first_long_of_state(2), 81},
      {"state of long 40", c.state_of_long(40), 0},
      {"state of long 41", c.state_of_long(41), 1},
      {"first short of long 1", c.first_short_of_long(1), 1},
      {"first short of long 5", c.first_short_of_long(5), 13},
      {"last short of long 5", c.last_short_of_long(5), 15},
      {"long of short 6", c.long_of_short(6), 2},
      {"long of short 7", c.long_of_short(7), 3},
      {"state of short 120", c.state_of_short(120), 0},
      {"state of short 121", c.state_of_short(121), 1},
  };
  for (const Case& k : cases) {
    if (k.got != k.want) {
      detail = std::string(k.what) + ": got " + std::to_string(k.got) + ", expected " +
               std::to_string(k.want);
      return false;
    }
  }
  if (c.long_start_s(2) != 9.0 || c.short_start_s(4) != 9.0 || c.state_start_s(3) != 1080.0) {
    detail = "slot start times wrong";
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 5. Day-long comparative trends: the potential-driven scheduler sustains the
//    effective-ranging target while the fairness baseline does not, delivers
//    lower non-anchor delay for both satellite classes, and the group3
//    weighting saturates user demand at 72 users.
bool check_performance_trends(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> bad;
  char buf[160];

  for (std::int64_t users : {std::int64_t{48}, std::int64_t{72}}) {
    const DayRun& j = day_run(users, "group1", Algorithm::Jcpd);
    const DayRun& f = day_run(users, "group1", Algorithm::Fcp);
    const double jr = j.metrics.ranging.mean_per_gnss_per_state;
    const double fr = f.metrics.ranging.mean_per_gnss_per_state;
    if (!(jr >= 55.0)) {
      std::snprintf(buf, sizeof buf, "u%lld: potential-driven GNSS ranging %.2f < 55",
                    static_cast<long long>(users), jr);
      bad.emplace_back(buf);
    }
    if (!(fr <= 50.0)) {
      std::snprintf(buf, sizeof buf, "u%lld: baseline GNSS ranging %.2f > 50",
                    static_cast<long long>(users), fr);
      bad.emplace_back(buf);
    }
    if (!(j.metrics.delay.mean_wait_gnss_slots < f.metrics.delay.mean_wait_gnss_slots)) {
      std::snprintf(buf, sizeof buf, "u%lld: GNSS delay %.3f !< baseline %.3f",
                    static_cast<long long>(users), j.metrics.delay.mean_wait_gnss_slots,
                    f.metrics.delay.mean_wait_gnss_slots);
      bad.emplace_back(buf);
    }
    if (!(j.metrics.delay.mean_wait_lp_slots < f.metrics.delay.mean_wait_lp_slots)) {
      std::snprintf(buf, sizeof buf, "u%lld: LP delay %.3f !< baseline %.3f",
                    static_cast<long long>(users), j.metrics.delay.mean_wait_lp_slots,
                    f.metrics.delay.mean_wait_lp_slots);
      bad.emplace_back(buf);
    }
  }

  const DayRun& g1 = day_run(72, "group1", Algorithm::Jcpd);
  const DayRun& g3 = day_run(72, "group3", Algorithm::Jcpd);
  if (!(g3.metrics.satisfaction.ratio >= 1.0 - 1e-9)) {
    std::snprintf(buf, sizeof buf, "group3 u72 satisfaction %.6f < 1",
                  g3.metrics.satisfaction.ratio);
    bad.emplace_back(buf);
  }
  if (!(g1.metrics.satisfaction.ratio <= g3.metrics.satisfaction.ratio + 1e-9)) {
    std::snprintf(buf, sizeof buf, "group1 u72 satisfaction %.6f > group3 %.6f",
                  g1.metrics.satisfaction.ratio, g3.metrics.satisfaction.ratio);
    bad.emplace_back(buf);
  }

  const double el = seconds_since(t0);
  if (el >= 900.0)
    bad.emplace_back("took " + std::to_string(el) + " s (budget 900 s)");
  if (!bad.empty()) {
    detail = bad[0];
    for (std::size_t i = 1; i < bad.size(); ++i) detail += "; " + bad[i];
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 6. Raising the exclusion cost (group2) shifts the day-long link mix away
//    from GNSS-LP links and toward LP-LP links at 64 users.
bool check_group_link_composition(std::string& detail) {
  const DayRun& a = day_run(64, "group1", Algorithm::Jcpd);
  const DayRun& b = day_run(64, "group2", Algorithm::Jcpd);
  const auto gl = static_cast<std::size_t>(LinkType::GnssLp);
  const auto ll = static_cast<std::size_t>(LinkType::LpLp);
  char buf[160];
  if (!(b.metrics.composition.per_state_mean[gl] < a.metrics.composition.per_state_mean[gl])) {
    std::snprintf(buf, sizeof buf, "gnss-lp per state: group2 %.3f !< group1 %.3f",
                  b.metrics.composition.per_state_mean[gl],
                  a.metrics.composition.per_state_mean[gl]);
    detail = buf;
    return false;
  }
  if (!(b.metrics.composition.per_state_mean[ll] > a.metrics.composition.per_state_mean[ll])) {
    std::snprintf(buf, sizeof buf, "lp-lp per state: group2 %.3f !> group1 %.3f",
                  b.metrics.composition.per_state_mean[ll],
                  a.metrics.composition.per_state_mean[ll]);
    detail = buf;
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// 7. Two runs of the same configuration produce byte-identical reports
//    (the manifest is excluded: it records wall-clock runtime).
bool check_determinism(std::string& detail) {
  const fs::path root = work_root();
  ScenarioConfig a = config_with(48, "group1", Algorithm::Jcpd, 3600);
  a.apply_override("output.directory=det_a");
  ScenarioConfig b = config_with(48, "group1", Algorithm::Jcpd, 3600);
  b.apply_override("output.directory=det_b");

  const RunResult ra = execute_run(a, root.string());
  const RunResult rb = execute_run(b, root.string());
  if (ra.scenario_id != rb.scenario_id) {
    detail = "scenario ids differ despite identical inputs";
    return false;
  }
  for (const char* f : {"plan.csv", "metrics.json", "delay.csv", "ranging.csv",
                        "satisfaction.csv", "link_composition.csv"}) {
    const std::string xa = slurp(fs::path(ra.out_dir) / f);
    const std::string xb = slurp(fs::path(rb.out_dir) / f);
    if (xa.empty() || xa != xb) {
      detail = std::string(f) + " differs between identical runs";
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// 8. The full seven-day horizon with 72 users completes end to end within
//    30 minutes and yields a complete plan.
bool check_seven_day_scale(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  ScenarioConfig cfg = ScenarioConfig::from_json_text(kBaseConfig);
  cfg.apply_override("users.count=72");
  cfg.apply_override("output.directory=seven_day");
  const RunResult r = execute_run(cfg, work_root().string());
  const double el = seconds_since(t0);

  if (!r.plan.complete || r.plan.n_states != 1680 ||
      r.plan.long_slots.size() != 67200 || r.plan.short_slots.size() != 201600) {
    detail = "plan incomplete or wrongly sized";
    return false;
  }
  std::error_code ec;
  const auto plan_bytes = fs::file_size(fs::path(r.out_dir) / "plan.csv", ec);
  fs::remove_all(r.out_dir);  // ~all of the suite's disk footprint
  if (ec || plan_bytes == 0) {
    detail = "plan.csv missing or empty";
    return false;
  }
  if (el >= 1800.0) {
    detail = "took " + std::to_string(el) + " s (budget 1800 s)";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  fs::remove_all(work_root());
  fs::create_directories(work_root());

  const std::vector<std::pair<std::string, std::function<bool(std::string&)>>> criteria = {
      {"clock_arithmetic", check_clock_arithmetic},
      {"potential_hand_values", check_potential_hand_values},
      {"matching_oracle_1000", check_matching_oracle},
      {"schedule_invariants_1day", check_schedule_invariants},
      {"performance_trends_1day", check_performance_trends},
      {"group_link_composition", check_group_link_composition},
      {"determinism", check_determinism},
      {"seven_day_scale", check_seven_day_scale},
  };

  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double el = seconds_since(t0);
    if (ok) {
      std::printf("[PASS] %-26s (%8.2f s)\n", name.c_str(), el);
    } else {
      std::printf("[FAIL] %-26s (%8.2f s): %s\n", name.c_str(), el, detail.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }

  fs::remove_all(work_root());
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
