#include "jcpd/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "jcpd/errors.hpp"
#include "jcpd/visibility.hpp"

namespace jcpd {

namespace fs = std::filesystem;

namespace {

std::string resolve_dir(const std::string& output_root, const std::string& directory) {
  fs::path dir(directory);
  if (dir.is_absolute()) return dir.string();
  fs::path root(output_root.empty() ? "." : output_root);
  return (root / dir).string();
}

std::int64_t count_users(const Roster& r) {
  std::int64_t n = 0;
  for (NodeId id = 0; id < r.size(); ++id)
    if (r.is_user(id)) ++n;
  return n;
}

}  // namespace

RunResult execute_run(const ScenarioConfig& cfg, const std::string& output_root) {
  RunResult res;
  res.scenario_id = cfg.scenario_id();
  res.scenario = cfg.build();
  const ScenarioConfig::OutputOptions out = cfg.output_options();
  res.out_dir = resolve_dir(output_root, out.directory);

  std::unique_ptr<ContactGraphSource> source;
  if (auto topo = cfg.topology_override()) {
    source = std::make_unique<TopologyFileSource>(
        read_topology_csv(topo->links_csv, topo->anchors_csv, res.scenario.roster));
  } else {
    source = std::make_unique<VisibilityEngine>(res.scenario.roster, res.scenario.ephemeris,
                                                res.scenario.clock, res.scenario.visibility);
  }

  const auto t0 = std::chrono::steady_clock::now();
  res.plan = run_scenario(res.scenario, *source);
  const auto t1 = std::chrono::steady_clock::now();
  res.metrics = compute_metrics(res.plan, res.scenario);
  res.metrics.runtime_s = std::chrono::duration<double>(t1 - t0).count();

  fs::create_directories(res.out_dir);
  check_directory_scenario(res.out_dir, res.scenario_id);

  ReportContext ctx;
  ctx.scenario_id = res.scenario_id;
  ctx.group = res.scenario.params_group;
  ctx.users = count_users(res.scenario.roster);

  const fs::path dir(res.out_dir);
  if (out.write_plan)
    write_plan_csv((dir / "plan.csv").string(), res.plan, res.scenario.roster, res.scenario_id);
  if (out.export_topology)
    write_topology_csv((dir / "topology_links.csv").string(),
                       (dir / "topology_anchors.csv").string(), *source, res.scenario.roster,
                       res.scenario.horizon_states, res.scenario_id);
  write_metrics_csvs(res.out_dir, res.metrics, ctx);
  write_metrics_json((dir / "metrics.json").string(), res.metrics, ctx);

  ManifestInfo info;
  info.scenario_id = res.scenario_id;
  info.name = res.scenario.name;
  info.seed = res.scenario.seed;
  info.group = res.scenario.params_group;
  info.users = ctx.users;
  info.algorithm = to_string(res.scenario.algorithm);
  info.runtime_s = res.metrics.runtime_s;
  write_manifest((dir / "manifest.json").string(), info);

  return res;
}

std::string summary_table(const MetricsReport& m) {
  auto rows = metric_rows(m);
  rows.emplace_back("runtime_s", format_double(m.runtime_s));
  std::size_t width = 0;
  for (const auto& [name, value] : rows) width = std::max(width, name.size());
  std::string out;
  for (const auto& [name, value] : rows) {
    out += name;
    out.append(width + 2 - name.size(), ' ');
    out += value;
    out += '\n';
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::vector<SweepCell> parse_sweep(const std::string& spec, const std::string& default_group) {
  struct ConfigAxis {
    Algorithm algorithm;
    std::string group;
  };
  std::vector<ConfigAxis> configs;
  std::vector<std::int64_t> users;
  bool have_users = false;

  for (const std::string& raw_part : split(spec, ';')) {
    const std::string part = trim(raw_part);
    if (part.empty()) continue;
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      throw ConfigError("sweep: expected axis=value,... in '" + part + "'");
    const std::string axis = trim(part.substr(0, eq));
    const std::string list = part.substr(eq + 1);
    if (axis == "configs") {
      for (const std::string& raw : split(list, ',')) {
        const std::string entry = trim(raw);
        if (entry.empty()) continue;
        ConfigAxis c;
        const std::size_t colon = entry.find(':');
        const std::string alg = entry.substr(0, colon);
        if (alg == "jcpd") {
          c.algorithm = Algorithm::Jcpd;
        } else if (alg == "fcp") {
          c.algorithm = Algorithm::Fcp;
        } else {
          throw ConfigError("sweep: unknown algorithm '" + alg + "' (expected jcpd or fcp)");
        }
        c.group = colon == std::string::npos ? default_group : trim(entry.substr(colon + 1));
        PotentialParams::preset(c.group);  // rejects unknown groups, listing presets
        configs.push_back(c);
      }
    } else if (axis == "users") {
      have_users = true;
      for (const std::string& raw : split(list, ',')) {
        const std::string entry = trim(raw);
        if (entry.empty()) continue;
        try {
          std::size_t used = 0;
          const std::int64_t v = std::stoll(entry, &used);
          if (used != entry.size() || v < 0) throw std::invalid_argument(entry);
          users.push_back(v);
        } catch (const std::exception&) {
          throw ConfigError("sweep: bad user count '" + entry + "'");
        }
      }
    } else {
      throw ConfigError("sweep: unknown axis '" + axis + "' (expected configs or users)");
    }
  }

  if (configs.empty() || (have_users && users.empty())) throw ConfigError("empty sweep");
  if (!have_users) users.push_back(-1);

  std::vector<SweepCell> cells;
  for (const auto& c : configs) {
    for (std::int64_t u : users) {
      SweepCell cell;
      cell.algorithm = c.algorithm;
      cell.group = c.group;
      cell.users = u;
      cell.label = std::string(to_string(c.algorithm)) + "_" + c.group;
      if (u >= 0) cell.label += "_u" + std::to_string(u);
      cells.push_back(cell);
    }
  }
  return cells;
}

std::vector<CompareCellResult> execute_compare(const ScenarioConfig& base,
                                               const std::string& sweep_spec,
                                               const std::string& output_root) {
  const std::vector<SweepCell> cells = parse_sweep(sweep_spec, base.group());
  const std::string base_dir = resolve_dir(output_root, base.output_options().directory);

  std::vector<CompareCellResult> results;
  for (const SweepCell& cell : cells) {
    CompareCellResult r;
    r.cell = cell;
    try {
      ScenarioConfig cfg = base;
      cfg.apply_override(std::string("algorithm=") + to_string(cell.algorithm));
      cfg.apply_override("group=" + cell.group);
      cfg.apply_override("params.base=" + cell.group);
      if (cell.users >= 0)
        cfg.apply_override("users.count=" + std::to_string(cell.users));
      cfg.apply_override("output.directory=" +
                         (fs::path(base.output_options().directory) / cell.label).string());
      r.run = execute_run(cfg, output_root);
      r.ok = true;
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    results.push_back(std::move(r));
  }

  fs::create_directories(base_dir);
  std::ofstream out(fs::path(base_dir) / "compare.csv", std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + base_dir + "/compare.csv");
  out << "scenario_id,algorithm,group,users,metric,value\n";
  for (const auto& r : results) {
    if (!r.ok) continue;
    const std::int64_t shown_users =
        r.cell.users >= 0 ? r.cell.users : count_users(r.run.scenario.roster);
    for (const auto& [metric, value] : metric_rows(r.run.metrics))
      out << r.run.scenario_id << ',' << to_string(r.cell.algorithm) << ',' << r.cell.group << ','
          << shown_users << ',' << metric << ',' << value << '\n';
  }
  return results;
}

}  // namespace jcpd
