#pragma once

#include <memory>
#include <string>
#include <vector>

#include "jcpd/metrics.hpp"
#include "jcpd/report_io.hpp"
#include "jcpd/scenario_config.hpp"
#include "jcpd/scheduler.hpp"

namespace jcpd {

struct RunResult {
  std::string out_dir;
  std::string scenario_id;
  Scenario scenario;
  ContactPlan plan;
  MetricsReport metrics;
};

// Builds the scenario, schedules it, computes metrics, and writes every
// report file into output_root/output.directory (the directory as given when
// absolute). An empty output_root means the current directory.
RunResult execute_run(const ScenarioConfig& cfg, const std::string& output_root = "");

// Plain-text metric summary printed by the CLI after a run.
std::string summary_table(const MetricsReport& m);

struct SweepCell {
  std::string label;       // directory-friendly cell name
  Algorithm algorithm = Algorithm::Jcpd;
  std::string group;
  std::int64_t users = -1;  // -1 keeps the config's user count
};

// Sweep grammar: "configs=jcpd:group1,fcp;users=48,72" — configuration
// entries are algorithm[:group], the users axis is optional.
std::vector<SweepCell> parse_sweep(const std::string& spec, const std::string& default_group);

struct CompareCellResult {
  SweepCell cell;
  bool ok = false;
  std::string error;
  RunResult run;  // valid when ok
};

// Runs every sweep cell into its own subdirectory of the base output
// directory and joins all metric rows into compare.csv there. Failed cells
// are reported and do not abort the others.
std::vector<CompareCellResult> execute_compare(const ScenarioConfig& base,
                                               const std::string& sweep_spec,
                                               const std::string& output_root = "");

}  // namespace jcpd
