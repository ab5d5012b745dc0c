#include <benchmark/benchmark.h>

#include <map>
#include <random>

#include "jcpd/matching.hpp"
#include "jcpd/scenario_config.hpp"
#include "jcpd/scheduler.hpp"
#include "jcpd/visibility.hpp"

using namespace jcpd;

namespace {

WeightedGraph random_graph(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> w(0.5, 100.0);
  WeightedGraph g;
  for (NodeId v = 0; v < n; ++v) g.add_node(v);
  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b)
      if (rng() % 2 == 0) g.add_edge(a, b, w(rng));
  return g;
}

// Full reference scenario (24 MEO + 3 IGSO + 3 GEO + 4 LP + 48 users + 3 GS).
const Scenario& reference_scenario() {
  static const Scenario sc = [] {
    ScenarioConfig cfg = ScenarioConfig::from_json_text("{}");
    cfg.apply_override("horizon_s=360");
    return cfg.build();
  }();
  return sc;
}

const ContactGraph& reference_state_graph() {
  static const ContactGraph g = [] {
    const Scenario& sc = reference_scenario();
    VisibilityEngine eng(sc.roster, sc.ephemeris, sc.clock, sc.visibility);
    return eng.state_graph(0);
  }();
  return g;
}

}  // namespace

static void BM_MaxWeightMatching(benchmark::State& state) {
  const WeightedGraph g = random_graph(static_cast<int>(state.range(0)), 42);
  for (auto _ : state) {
    Matching m = max_weight_matching(g);
    benchmark::DoNotOptimize(m.total_weight);
  }
}
BENCHMARK(BM_MaxWeightMatching)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

static void BM_VisibilityStateGraph(benchmark::State& state) {
  const Scenario& sc = reference_scenario();
  VisibilityEngine eng(sc.roster, sc.ephemeris, sc.clock, sc.visibility);
  std::int64_t s = 0;
  for (auto _ : state) {
    ContactGraph g = eng.state_graph(s++ % 240);
    benchmark::DoNotOptimize(g.edges.size());
  }
}
BENCHMARK(BM_VisibilityStateGraph)->Unit(benchmark::kMillisecond);

static void BM_LongSlotRound(benchmark::State& state) {
  const Scenario& sc = reference_scenario();
  const ContactGraph& g = reference_state_graph();
  ScheduleState st(sc.roster, sc.params, sc.demands);
  st.begin_state(g);
  st.clock = {0, 1, 1};
  accrue_telemetry(st, SlotKind::Long);
  for (auto _ : state) {
    ScheduleState round = st;
    LongSlotResult res = long_slot_cpd(1, round, g, sc.params);
    benchmark::DoNotOptimize(res.links.size());
  }
}
BENCHMARK(BM_LongSlotRound);

static void BM_ShortSlotRound(benchmark::State& state) {
  const Scenario& sc = reference_scenario();
  const ContactGraph& g = reference_state_graph();
  ScheduleState st(sc.roster, sc.params, sc.demands);
  st.begin_state(g);
  st.clock = {0, 1, 1};
  accrue_telemetry(st, SlotKind::Long);
  accrue_telemetry(st, SlotKind::Short);
  for (auto _ : state) {
    ScheduleState round = st;
    ShortSlotResult res = short_slot_cpd(1, round, g, {}, sc.params);
    benchmark::DoNotOptimize(res.links.size());
  }
}
BENCHMARK(BM_ShortSlotRound);

static void BM_FullState(benchmark::State& state) {
  Scenario sc = reference_scenario();
  VisibilityEngine eng(sc.roster, sc.ephemeris, sc.clock, sc.visibility);
  std::map<std::int64_t, ContactGraph> graphs;
  graphs.emplace(0, eng.state_graph(0));
  TopologyFileSource topo(graphs);
  for (auto _ : state) {
    ContactPlan plan = run_jcpd(sc, topo);
    benchmark::DoNotOptimize(plan.long_slots.size());
  }
}
BENCHMARK(BM_FullState)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
