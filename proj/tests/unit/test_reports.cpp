#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "doctest.h"
#include "jcpd/report_io.hpp"
#include "jcpd/runner.hpp"
#include "jcpd/visibility.hpp"

using namespace jcpd;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << content;
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Roster small_roster() {
  Roster r;
  r.add({"A", NodeClass::GnssSatellite, {}});
  r.add({"B", NodeClass::GnssSatellite, {}});
  r.add({"C", NodeClass::LpSatellite, {}});
  r.add({"U", NodeClass::User, {}});
  r.add({"G", NodeClass::GroundStation, {}});
  return r;
}

// Scenario with an externally supplied topology so every run is hermetic:
// two GNSS, one LP, one user, one station, two 9-second states.
ScenarioConfig tiny_config(const fs::path& dir, const std::string& extra = "") {
  const std::string links =
      "state_index,node_a,node_b,link_type\n"
      "0,MEO01,MEO02,gnss_gnss\n"
      "0,MEO01,L4,gnss_lp\n"
      "0,L4,U001,lp_user\n"
      "1,MEO01,MEO02,gnss_gnss\n"
      "1,L4,U001,lp_user\n";
  std::string anchors = "state_index,node,is_anchor\n";
  for (int s = 0; s < 2; ++s)
    for (const char* n : {"MEO01", "MEO02", "L4", "U001", "GS1"})
      anchors += std::to_string(s) + "," + n + "," + (std::string(n) == "MEO02" ? "1" : "0") + "\n";
  spit(dir / "links.csv", links);
  spit(dir / "anchors.csv", anchors);

  std::string doc = R"({
    "name": "tiny",
    "clock": {"fsa_state_s": 9, "long_slot_s": 9, "short_slot_s": 3},
    "horizon_s": 18,
    "constellation": {
      "walker": {"count": 2, "planes": 1, "phasing": 0},
      "igso": [], "geo": [],
      "lp": [{"name": "L4", "point": "L4"}]
    },
    "ground_stations": [{"name": "GS1", "lat_deg": 0.0, "lon_deg": 0.0}],
    "users": {"count": 1, "links_per_state": 1, "placement": ["L4"]},
    "topology_override": {"links_csv": "links.csv", "anchors_csv": "anchors.csv"}
  )" + extra + "}";
  return ScenarioConfig::from_json_text(doc, dir.string());
}

}  // namespace

TEST_CASE("numbers render compactly and stably") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(-2.25) == "-2.25");
  CHECK(format_double(2.0 / 3.0) == "0.6666666667");
  CHECK(format_double(1e-9) == "1e-09");
  CHECK(format_double(0.0) == "0");
}

TEST_CASE("metric rows cover every family in a fixed order") {
  MetricsReport m;
  auto rows = metric_rows(m);
  REQUIRE(rows.size() == 18);
  const char* want[] = {"mean_delay_nonanchor_gnss_shortslots",
                        "mean_delay_nonanchor_gnss_s",
                        "mean_delay_nonanchor_lp_longslots",
                        "mean_delay_nonanchor_lp_s",
                        "delay_samples_gnss",
                        "delay_samples_lp",
                        "delay_censored_gnss",
                        "delay_censored_lp",
                        "mean_ranging_links_per_gnss_per_state",
                        "mean_ranging_links_per_lp_per_state",
                        "user_satisfaction_ratio",
                        "users_with_demand",
                        "links_per_state_lp_lp",
                        "links_per_state_lp_user",
                        "links_per_state_gnss_lp",
                        "links_per_state_gnss_user",
                        "links_per_state_gnss_gnss",
                        "links_total"};
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].first == want[i]);
}

TEST_CASE("plan CSV interleaves each LongSlot with its ShortSlots") {
  Roster r = small_roster();
  ContactPlan plan;
  plan.clock = SlotClock{9, 9, 3};
  plan.algorithm = Algorithm::Jcpd;
  plan.n_states = 1;
  plan.long_slots = {{1, {{0, 2, LinkType::GnssLp, 2.5}}}};
  plan.short_slots = {{1, {{1, 2, LinkType::GnssGnss, 1.0}}},
                      {2, {}},
                      {3, {{0, 1, LinkType::GnssGnss, 0.5}}}};
  fs::path dir = fresh_dir("jcpd_reports_plan");
  write_plan_csv((dir / "plan.csv").string(), plan, r, "cafef00dcafef00d");
  CHECK(slurp(dir / "plan.csv") ==
        "# scenario=cafef00dcafef00d\n"
        "slot_kind,slot_index,node_a,node_b,link_type,weight\n"
        "long,1,A,C,gnss_lp,2.5\n"
        "short,1,B,C,gnss_gnss,1\n"
        "short,3,A,B,gnss_gnss,0.5\n");
  fs::remove_all(dir);
}

TEST_CASE("topology CSVs round-trip through write and read") {
  Roster r = small_roster();
  std::map<std::int64_t, ContactGraph> graphs;
  for (std::int64_t s = 0; s < 2; ++s) {
    ContactGraph g;
    g.state_index = s;
    g.node_count = r.size();
    g.anchor.assign(static_cast<std::size_t>(r.size()), 0);
    g.anchor[1] = 1;
    g.edges = {{0, 1, LinkType::GnssGnss}, {0, 2, LinkType::GnssLp}};
    if (s == 1) g.edges.push_back({2, 3, LinkType::LpUser});
    g.rebuild_adjacency();
    graphs.emplace(s, std::move(g));
  }
  TopologyFileSource src(graphs);

  fs::path dir = fresh_dir("jcpd_reports_topo");
  const std::string lp = (dir / "links.csv").string();
  const std::string ap = (dir / "anchors.csv").string();
  write_topology_csv(lp, ap, src, r, 2, "0123456789abcdef");

  auto back = read_topology_csv(lp, ap, r);
  REQUIRE(back.size() == 2);
  CHECK(back.at(0).edges.size() == 2);
  CHECK(back.at(1).edges.size() == 3);
  CHECK(back.at(1).edges[2].a == 2);
  CHECK(back.at(1).edges[2].b == 3);
  CHECK(back.at(1).edges[2].type == LinkType::LpUser);
  CHECK(back.at(0).anchor[1] == 1);
  CHECK(back.at(0).anchor[0] == 0);
  CHECK(back.at(0).node_count == r.size());
  fs::remove_all(dir);
}

TEST_CASE("topology reader rejects malformed rows") {
  Roster r = small_roster();
  fs::path dir = fresh_dir("jcpd_reports_toporej");
  const fs::path ap = dir / "anchors.csv";
  spit(ap, "state_index,node,is_anchor\n0,B,1\n");

  auto read_links = [&](const std::string& rows) {
    spit(dir / "links.csv", "state_index,node_a,node_b,link_type\n" + rows);
    return read_topology_csv((dir / "links.csv").string(), ap.string(), r);
  };

  CHECK_THROWS_AS(read_links("0,A,NOPE,gnss_gnss\n"), UnknownNodeError);
  CHECK_THROWS_WITH_AS(read_links("0,A,A,gnss_gnss\n"),
                       "topology links row connects a node to itself: 0,A,A,gnss_gnss",
                       ConfigError);
  CHECK_THROWS_WITH_AS(read_links("0,U,G,lp_user\n"),
                       "topology links row pairs unlinkable node classes: 0,U,G,lp_user",
                       ConfigError);
  CHECK_THROWS_WITH_AS(
      read_links("0,A,C,gnss_gnss\n"),
      "topology links row declares link_type 'gnss_gnss' but the node classes imply "
      "'gnss_lp': 0,A,C,gnss_gnss",
      ConfigError);
  CHECK_THROWS_AS(read_links("zero,A,B,gnss_gnss\n"), ConfigError);
  CHECK_THROWS_AS(read_links("0,A,B\n"), ConfigError);
  CHECK_THROWS_AS(read_topology_csv((dir / "absent.csv").string(), ap.string(), r), ConfigError);

  // duplicates collapse, row order does not matter
  auto g = read_links("0,B,A,gnss_gnss\n0,A,B,gnss_gnss\n");
  CHECK(g.at(0).edges.size() == 1);
  CHECK(g.at(0).edges[0].a == 0);
  CHECK(g.at(0).edges[0].b == 1);
  fs::remove_all(dir);
}

TEST_CASE("output directories refuse a second scenario") {
  fs::path dir = fresh_dir("jcpd_reports_guard");
  CHECK_NOTHROW(check_directory_scenario((dir / "missing").string(), "aa"));

  spit(dir / "delay.csv", "# scenario=1111111111111111\nscenario_id,...\n");
  CHECK_NOTHROW(check_directory_scenario(dir.string(), "1111111111111111"));
  CHECK_THROWS_AS(check_directory_scenario(dir.string(), "2222222222222222"), ConfigError);
  try {
    check_directory_scenario(dir.string(), "2222222222222222");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("already holds scenario 1111111111111111") !=
          std::string::npos);
  }

  // untagged files and odd names are ignored
  fs::remove(dir / "delay.csv");
  spit(dir / "notes.csv", "no tag here\n");
  spit(dir / "readme.txt", "# scenario=3333333333333333\n");
  CHECK_NOTHROW(check_directory_scenario(dir.string(), "2222222222222222"));

  spit(dir / "manifest.json", "{\"scenario\":\"4444444444444444\"}\n");
  CHECK_THROWS_AS(check_directory_scenario(dir.string(), "2222222222222222"), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("a run writes the full report set deterministically") {
  fs::path base = fresh_dir("jcpd_reports_run");
  ScenarioConfig cfg = tiny_config(base, R"(, "output": {"directory": "out",
      "write_plan": true, "export_topology": true})");
  REQUIRE(cfg.validate().empty());

  RunResult r1 = execute_run(cfg, (base / "rootA").string());
  CHECK(r1.plan.complete);
  CHECK(r1.plan.n_states == 2);
  CHECK(r1.out_dir == (base / "rootA" / "out").string());

  const char* files[] = {"plan.csv",         "topology_links.csv", "topology_anchors.csv",
                         "delay.csv",        "ranging.csv",        "satisfaction.csv",
                         "link_composition.csv", "metrics.json",   "manifest.json"};
  for (const char* f : files) CHECK(fs::exists(fs::path(r1.out_dir) / f));

  nlohmann::json manifest = nlohmann::json::parse(slurp(fs::path(r1.out_dir) / "manifest.json"));
  CHECK(manifest["scenario"] == r1.scenario_id);
  CHECK(manifest["name"] == "tiny");
  CHECK(manifest["group"] == "group1");
  CHECK(manifest["users"] == 1);
  CHECK(manifest["algorithm"] == "jcpd");
  CHECK(manifest["seed"] == 1);
  CHECK(manifest["version"] == kVersion);
  CHECK(manifest["runtime_s"].is_number());

  nlohmann::json mj = nlohmann::json::parse(slurp(fs::path(r1.out_dir) / "metrics.json"));
  CHECK(mj["scenario"] == r1.scenario_id);
  CHECK(mj["delay"].contains("mean_wait_gnss_shortslots"));
  CHECK(mj["ranging"].contains("mean_per_gnss_per_state"));
  CHECK(mj["satisfaction"]["users_with_demand"] == 1);
  CHECK(mj["composition"].contains("total_links"));
  CHECK_FALSE(mj.contains("runtime_s"));  // runtime lives in the manifest only

  // the user link exists in the plan file
  CHECK(slurp(fs::path(r1.out_dir) / "plan.csv").find("lp_user") != std::string::npos);

  // identical configuration, identical bytes (manifest carries wall time)
  RunResult r2 = execute_run(cfg, (base / "rootB").string());
  for (const char* f : files) {
    if (std::string(f) == "manifest.json") continue;
    CHECK_MESSAGE(slurp(fs::path(r1.out_dir) / f) == slurp(fs::path(r2.out_dir) / f), f);
  }

  // re-running the same scenario into its own directory is fine
  CHECK_NOTHROW(execute_run(cfg, (base / "rootA").string()));

  // a different scenario aimed at the same directory is refused
  ScenarioConfig other = tiny_config(base, R"(, "seed": 9,
      "output": {"directory": "out"})");
  CHECK_THROWS_AS(execute_run(other, (base / "rootA").string()), ConfigError);
  fs::remove_all(base);
}

TEST_CASE("sweep grammar expands to the full grid") {
  auto cells = parse_sweep("configs=jcpd:group1,fcp;users=48,72", "group2");
  REQUIRE(cells.size() == 4);
  CHECK(cells[0].label == "jcpd_group1_u48");
  CHECK(cells[1].label == "jcpd_group1_u72");
  CHECK(cells[2].label == "fcp_group2_u48");
  CHECK(cells[3].label == "fcp_group2_u72");
  CHECK(cells[0].algorithm == Algorithm::Jcpd);
  CHECK(cells[2].algorithm == Algorithm::Fcp);
  CHECK(cells[2].group == "group2");
  CHECK(cells[0].users == 48);
  CHECK(cells[3].users == 72);

  auto single = parse_sweep("configs=fcp", "group1");
  REQUIRE(single.size() == 1);
  CHECK(single[0].label == "fcp_group1");
  CHECK(single[0].users == -1);

  auto spaced = parse_sweep(" configs= jcpd , fcp ; users= 8 ", "group3");
  REQUIRE(spaced.size() == 2);
  CHECK(spaced[0].label == "jcpd_group3_u8");

  CHECK_THROWS_WITH_AS(parse_sweep("", "group1"), "empty sweep", ConfigError);
  CHECK_THROWS_WITH_AS(parse_sweep("users=48", "group1"), "empty sweep", ConfigError);
  CHECK_THROWS_WITH_AS(parse_sweep("configs=jcpd;users=", "group1"), "empty sweep", ConfigError);
  CHECK_THROWS_WITH_AS(parse_sweep("configs=magic", "group1"),
                       "sweep: unknown algorithm 'magic' (expected jcpd or fcp)", ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_sweep("configs=jcpd:groupX", "group1"),
      "unknown parameter group 'groupX' (known presets: group1, group2, group3)", ConfigError);
  CHECK_THROWS_WITH_AS(parse_sweep("speed=3", "group1"),
                       "sweep: unknown axis 'speed' (expected configs or users)", ConfigError);
  CHECK_THROWS_WITH_AS(parse_sweep("configs=jcpd;users=-4", "group1"),
                       "sweep: bad user count '-4'", ConfigError);
  CHECK_THROWS_WITH_AS(parse_sweep("configs", "group1"),
                       "sweep: expected axis=value,... in 'configs'", ConfigError);
}

TEST_CASE("compare runs every cell and joins the metrics") {
  fs::path base = fresh_dir("jcpd_reports_cmp");
  ScenarioConfig cfg = tiny_config(base, R"(, "output": {"directory": "cmp"})");
  const std::string root = (base / "root").string();

  auto results = execute_compare(cfg, "configs=jcpd,fcp", root);
  REQUIRE(results.size() == 2);
  CHECK(results[0].ok);
  CHECK(results[1].ok);
  CHECK(fs::exists(base / "root" / "cmp" / "jcpd_group1" / "manifest.json"));
  CHECK(fs::exists(base / "root" / "cmp" / "fcp_group1" / "plan.csv"));

  std::istringstream join(slurp(base / "root" / "cmp" / "compare.csv"));
  std::string line;
  REQUIRE(std::getline(join, line));
  CHECK(line == "scenario_id,algorithm,group,users,metric,value");
  int jcpd_rows = 0;
  int fcp_rows = 0;
  while (std::getline(join, line)) {
    if (line.find(",jcpd,group1,1,") != std::string::npos) ++jcpd_rows;
    if (line.find(",fcp,group1,1,") != std::string::npos) ++fcp_rows;
  }
  CHECK(jcpd_rows == 18);
  CHECK(fcp_rows == 18);

  // a poisoned cell directory fails that cell alone
  fs::path root2 = base / "root2";
  spit(root2 / "cmp" / "jcpd_group1" / "stale.csv", "# scenario=ffffffffffffffff\nx\n");
  auto partial = execute_compare(cfg, "configs=jcpd,fcp", root2.string());
  REQUIRE(partial.size() == 2);
  CHECK_FALSE(partial[0].ok);
  CHECK(partial[0].error.find("already holds scenario") != std::string::npos);
  CHECK(partial[1].ok);
  std::istringstream join2(slurp(root2 / "cmp" / "compare.csv"));
  int rows = 0;
  std::getline(join2, line);
  while (std::getline(join2, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 18);
  fs::remove_all(base);
}
