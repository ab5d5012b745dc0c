#include "jcpd/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "jcpd/errors.hpp"

namespace jcpd {

using nlohmann::json;
namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  return out;
}

void write_slot_rows(std::ofstream& out, const SlotRecord& rec, SlotKind kind,
                     const Roster& roster) {
  const char* kind_name = to_string(kind);
  for (const auto& ln : rec.links) {
    out << kind_name << ',' << rec.slot << ',' << roster.name(ln.a) << ',' << roster.name(ln.b)
        << ',' << to_string(ln.type) << ',' << format_double(ln.weight) << '\n';
  }
}

// CSV splitting for the formats written here: no quoting, no embedded commas.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
  return out;
}

bool skippable(const std::string& line) {
  return line.empty() || line[0] == '#';
}

std::int64_t parse_i64(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer in " + what + ": '" + s + "'");
  }
}

}  // namespace

void write_plan_csv(const std::string& path, const ContactPlan& plan, const Roster& roster,
                    const std::string& scenario_id) {
  std::ofstream out = open_out(path);
  out << "# scenario=" << scenario_id << '\n';
  out << "slot_kind,slot_index,node_a,node_b,link_type,weight\n";
  const std::int64_t m = plan.clock.shorts_per_long();
  for (std::size_t li = 0; li < plan.long_slots.size(); ++li) {
    write_slot_rows(out, plan.long_slots[li], SlotKind::Long, roster);
    const std::int64_t n = plan.long_slots[li].slot;
    const std::int64_t k0 = plan.clock.first_short_of_long(n);
    for (std::int64_t k = k0; k < k0 + m; ++k) {
      const auto ki = static_cast<std::size_t>(k - 1);
      if (ki < plan.short_slots.size())
        write_slot_rows(out, plan.short_slots[ki], SlotKind::Short, roster);
    }
  }
}

void write_topology_csv(const std::string& links_path, const std::string& anchors_path,
                        const ContactGraphSource& source, const Roster& roster,
                        std::int64_t n_states, const std::string& scenario_id) {
  std::ofstream links = open_out(links_path);
  std::ofstream anchors = open_out(anchors_path);
  links << "# scenario=" << scenario_id << '\n';
  links << "state_index,node_a,node_b,link_type\n";
  anchors << "# scenario=" << scenario_id << '\n';
  anchors << "state_index,node,is_anchor\n";
  for (std::int64_t s = 0; s < n_states; ++s) {
    ContactGraph g = source.state_graph(s);
    for (const auto& e : g.edges)
      links << s << ',' << roster.name(e.a) << ',' << roster.name(e.b) << ','
            << to_string(e.type) << '\n';
    for (NodeId id = 0; id < roster.size(); ++id)
      anchors << s << ',' << roster.name(id) << ','
              << (g.anchor[static_cast<std::size_t>(id)] ? 1 : 0) << '\n';
  }
}

std::map<std::int64_t, ContactGraph> read_topology_csv(const std::string& links_path,
                                                       const std::string& anchors_path,
                                                       const Roster& roster) {
  std::map<std::int64_t, ContactGraph> graphs;
  auto state_of = [&](std::int64_t s) -> ContactGraph& {
    auto it = graphs.find(s);
    if (it == graphs.end()) {
      ContactGraph g;
      g.state_index = s;
      g.node_count = roster.size();
      g.anchor.assign(static_cast<std::size_t>(roster.size()), 0);
      it = graphs.emplace(s, std::move(g)).first;
    }
    return it->second;
  };

  std::ifstream anchors(anchors_path);
  if (!anchors) throw ConfigError("cannot open topology anchors file: " + anchors_path);
  std::string line;
  bool saw_header = false;
  while (std::getline(anchors, line)) {
    if (skippable(line)) continue;
    std::vector<std::string> f = split_csv(line);
    if (!saw_header && !f.empty() && f[0] == "state_index") {
      saw_header = true;
      continue;
    }
    if (f.size() != 3)
      throw ConfigError("topology anchors row needs state_index,node,is_anchor: " + line);
    const std::int64_t s = parse_i64(f[0], "topology anchors state_index");
    const NodeId id = roster.require(f[1]);
    const std::int64_t flag = parse_i64(f[2], "topology anchors is_anchor");
    state_of(s).anchor[static_cast<std::size_t>(id)] = flag != 0 ? 1 : 0;
  }

  std::ifstream links(links_path);
  if (!links) throw ConfigError("cannot open topology links file: " + links_path);
  saw_header = false;
  while (std::getline(links, line)) {
    if (skippable(line)) continue;
    std::vector<std::string> f = split_csv(line);
    if (!saw_header && !f.empty() && f[0] == "state_index") {
      saw_header = true;
      continue;
    }
    if (f.size() != 4)
      throw ConfigError("topology links row needs state_index,node_a,node_b,link_type: " + line);
    const std::int64_t s = parse_i64(f[0], "topology links state_index");
    NodeId a = roster.require(f[1]);
    NodeId b = roster.require(f[2]);
    if (a == b) throw ConfigError("topology links row connects a node to itself: " + line);
    if (!linkable(roster.cls(a), roster.cls(b)))
      throw ConfigError("topology links row pairs unlinkable node classes: " + line);
    if (a > b) std::swap(a, b);
    const LinkType t = link_type_between(roster.cls(a), roster.cls(b));
    if (f[3] != to_string(t))
      throw ConfigError("topology links row declares link_type '" + f[3] + "' but the node classes imply '" +
                        to_string(t) + "': " + line);
    state_of(s).edges.push_back({a, b, t});
  }

  for (auto& [s, g] : graphs) {
    std::sort(g.edges.begin(), g.edges.end(), [](const ContactEdge& x, const ContactEdge& y) {
      return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end(),
                              [](const ContactEdge& x, const ContactEdge& y) {
                                return x.a == y.a && x.b == y.b;
                              }),
                  g.edges.end());
    g.rebuild_adjacency();
  }
  return graphs;
}

namespace {

using Rows = std::vector<std::pair<std::string, std::string>>;

Rows rows_delay(const MetricsReport& m) {
  return {{"mean_delay_nonanchor_gnss_shortslots", format_double(m.delay.mean_wait_gnss_slots)},
          {"mean_delay_nonanchor_gnss_s", format_double(m.delay.mean_wait_gnss_s)},
          {"mean_delay_nonanchor_lp_longslots", format_double(m.delay.mean_wait_lp_slots)},
          {"mean_delay_nonanchor_lp_s", format_double(m.delay.mean_wait_lp_s)},
          {"delay_samples_gnss", std::to_string(m.delay.samples_gnss)},
          {"delay_samples_lp", std::to_string(m.delay.samples_lp)},
          {"delay_censored_gnss", std::to_string(m.delay.censored_gnss)},
          {"delay_censored_lp", std::to_string(m.delay.censored_lp)}};
}

Rows rows_ranging(const MetricsReport& m) {
  return {
      {"mean_ranging_links_per_gnss_per_state", format_double(m.ranging.mean_per_gnss_per_state)},
      {"mean_ranging_links_per_lp_per_state", format_double(m.ranging.mean_per_lp_per_state)}};
}

Rows rows_satisfaction(const MetricsReport& m) {
  return {{"user_satisfaction_ratio", format_double(m.satisfaction.ratio)},
          {"users_with_demand", std::to_string(m.satisfaction.users)}};
}

Rows rows_composition(const MetricsReport& m) {
  const auto& c = m.composition.per_state_mean;
  return {
      {"links_per_state_lp_lp", format_double(c[static_cast<std::size_t>(LinkType::LpLp)])},
      {"links_per_state_lp_user", format_double(c[static_cast<std::size_t>(LinkType::LpUser)])},
      {"links_per_state_gnss_lp", format_double(c[static_cast<std::size_t>(LinkType::GnssLp)])},
      {"links_per_state_gnss_user", format_double(c[static_cast<std::size_t>(LinkType::GnssUser)])},
      {"links_per_state_gnss_gnss", format_double(c[static_cast<std::size_t>(LinkType::GnssGnss)])},
      {"links_total", std::to_string(m.composition.total_links)}};
}

void write_metric_csv(const std::string& path, const ReportContext& ctx, const Rows& rows) {
  std::ofstream out = open_out(path);
  out << "# scenario=" << ctx.scenario_id << '\n';
  out << "scenario_id,group,users,metric,value\n";
  for (const auto& [metric, value] : rows)
    out << ctx.scenario_id << ',' << ctx.group << ',' << ctx.users << ',' << metric << ','
        << value << '\n';
}

}  // namespace

std::vector<std::pair<std::string, std::string>> metric_rows(const MetricsReport& m) {
  Rows all = rows_delay(m);
  for (Rows more : {rows_ranging(m), rows_satisfaction(m), rows_composition(m)})
    all.insert(all.end(), more.begin(), more.end());
  return all;
}

void write_metrics_csvs(const std::string& dir, const MetricsReport& m, const ReportContext& ctx) {
  const fs::path d(dir);
  write_metric_csv((d / "delay.csv").string(), ctx, rows_delay(m));
  write_metric_csv((d / "ranging.csv").string(), ctx, rows_ranging(m));
  write_metric_csv((d / "satisfaction.csv").string(), ctx, rows_satisfaction(m));
  write_metric_csv((d / "link_composition.csv").string(), ctx, rows_composition(m));
}

void write_metrics_json(const std::string& path, const MetricsReport& m,
                        const ReportContext& ctx) {
  json j;
  j["scenario"] = ctx.scenario_id;
  j["group"] = ctx.group;
  j["users"] = ctx.users;
  j["delay"] = {{"mean_wait_gnss_shortslots", m.delay.mean_wait_gnss_slots},
                {"mean_wait_gnss_s", m.delay.mean_wait_gnss_s},
                {"mean_wait_lp_longslots", m.delay.mean_wait_lp_slots},
                {"mean_wait_lp_s", m.delay.mean_wait_lp_s},
                {"samples_gnss", m.delay.samples_gnss},
                {"samples_lp", m.delay.samples_lp},
                {"censored_gnss", m.delay.censored_gnss},
                {"censored_lp", m.delay.censored_lp}};
  j["ranging"] = {{"mean_per_gnss_per_state", m.ranging.mean_per_gnss_per_state},
                  {"mean_per_lp_per_state", m.ranging.mean_per_lp_per_state}};
  j["satisfaction"] = {{"ratio", m.satisfaction.ratio},
                       {"users_with_demand", m.satisfaction.users},
                       {"states", m.satisfaction.states}};
  const auto& c = m.composition.per_state_mean;
  j["composition"] = {
      {"lp_lp", c[static_cast<std::size_t>(LinkType::LpLp)]},
      {"lp_user", c[static_cast<std::size_t>(LinkType::LpUser)]},
      {"gnss_lp", c[static_cast<std::size_t>(LinkType::GnssLp)]},
      {"gnss_user", c[static_cast<std::size_t>(LinkType::GnssUser)]},
      {"gnss_gnss", c[static_cast<std::size_t>(LinkType::GnssGnss)]},
      {"total_links", m.composition.total_links}};
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_manifest(const std::string& path, const ManifestInfo& info) {
  json j;
  j["scenario"] = info.scenario_id;
  j["name"] = info.name;
  j["seed"] = info.seed;
  j["group"] = info.group;
  j["users"] = info.users;
  j["algorithm"] = info.algorithm;
  j["version"] = kVersion;
  j["runtime_s"] = info.runtime_s;
  std::ofstream out = open_out(path);
  out << j.dump(2) << '\n';
}

void check_directory_scenario(const std::string& dir, const std::string& scenario_id) {
  if (!fs::exists(dir)) return;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const fs::path& p = entry.path();
    if (p.extension() == ".csv") {
      std::ifstream in(p);
      std::string first;
      if (std::getline(in, first)) {
        const std::string tag = "# scenario=";
        if (first.rfind(tag, 0) == 0) {
          std::string id = first.substr(tag.size());
          if (!id.empty() && id.back() == '\r') id.pop_back();
          if (id != scenario_id)
            throw ConfigError("output directory " + dir + " already holds scenario " + id +
                              " (this run is " + scenario_id + ")");
        }
      }
    } else if (p.filename() == "manifest.json") {
      std::ifstream in(p);
      json j = json::parse(in, nullptr, false);
      if (j.is_object() && j.contains("scenario") && j["scenario"].is_string()) {
        const std::string id = j["scenario"].get<std::string>();
        if (id != scenario_id)
          throw ConfigError("output directory " + dir + " already holds scenario " + id +
                            " (this run is " + scenario_id + ")");
      }
    }
  }
}

}  // namespace jcpd
