#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jcpd/metrics.hpp"
#include "jcpd/scheduler.hpp"

namespace jcpd {

// Identity columns stamped into every report row.
struct ReportContext {
  std::string scenario_id;
  std::string group;
  std::int64_t users = 0;
};

struct ManifestInfo {
  std::string scenario_id;
  std::string name;
  std::uint64_t seed = 0;
  std::string group;
  std::int64_t users = 0;
  std::string algorithm;
  double runtime_s = 0.0;
};

// Stable scientific-friendly number rendering shared by all CSV writers.
std::string format_double(double v);

// slot_kind,slot_index,node_a,node_b,link_type,weight; slots interleaved
// chronologically (each LongSlot followed by its ShortSlots).
void write_plan_csv(const std::string& path, const ContactPlan& plan, const Roster& roster,
                    const std::string& scenario_id);

// state_index,node_a,node_b,link_type plus state_index,node,is_anchor.
void write_topology_csv(const std::string& links_path, const std::string& anchors_path,
                        const ContactGraphSource& source, const Roster& roster,
                        std::int64_t n_states, const std::string& scenario_id);

// Reads the two topology files back into per-state graphs.
std::map<std::int64_t, ContactGraph> read_topology_csv(const std::string& links_path,
                                                       const std::string& anchors_path,
                                                       const Roster& roster);

// Every metric as (name, rendered value), all families concatenated — the
// row set shared by the per-family CSVs and the comparison join.
std::vector<std::pair<std::string, std::string>> metric_rows(const MetricsReport& m);

// One CSV per metric family (delay, ranging, satisfaction, link_composition),
// long format: scenario_id,group,users,metric,value.
void write_metrics_csvs(const std::string& dir, const MetricsReport& m, const ReportContext& ctx);

// Machine-readable summary of every metric family. Deliberately excludes
// runtime so identical runs stay byte-identical; runtime goes to the
// manifest.
void write_metrics_json(const std::string& path, const MetricsReport& m,
                        const ReportContext& ctx);

void write_manifest(const std::string& path, const ManifestInfo& info);

// Rejects report directories already holding another scenario's outputs.
void check_directory_scenario(const std::string& dir, const std::string& scenario_id);

}  // namespace jcpd
