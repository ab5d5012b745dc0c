#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jcpd/errors.hpp"
#include "jcpd/runner.hpp"
#include "jcpd/scenario_config.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitRuntimeError = 2;

jcpd::ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& sets) {
  jcpd::ScenarioConfig cfg = jcpd::ScenarioConfig::from_file(path);
  for (const std::string& s : sets) cfg.apply_override(s);
  return cfg;
}

int cmd_validate(const std::string& path, const std::vector<std::string>& sets) {
  jcpd::ScenarioConfig cfg = load_config(path, sets);
  const std::vector<std::string> diags = cfg.validate();
  if (diags.empty()) {
    std::cout << "config ok (scenario " << cfg.scenario_id() << ")\n";
    return kExitOk;
  }
  std::cerr << "config invalid:\n";
  for (const std::string& d : diags) std::cerr << "  - " << d << '\n';
  return kExitConfigError;
}

int cmd_run(const std::string& path, const std::vector<std::string>& sets,
            const std::string& output_root) {
  jcpd::RunResult res = jcpd::execute_run(load_config(path, sets), output_root);
  std::cout << "scenario " << res.scenario_id << " (" << to_string(res.scenario.algorithm) << ", "
            << res.scenario.params_group << ", " << res.scenario.horizon_states << " states)\n";
  std::cout << jcpd::summary_table(res.metrics);
  std::cout << "reports written to " << res.out_dir << '\n';
  return kExitOk;
}

int cmd_compare(const std::string& path, const std::vector<std::string>& sets,
                const std::string& sweep, const std::string& output_root) {
  const auto results = jcpd::execute_compare(load_config(path, sets), sweep, output_root);
  bool any_failed = false;
  for (const auto& r : results) {
    if (r.ok) {
      std::cout << "[ok]     " << r.cell.label << " -> " << r.run.out_dir << '\n';
    } else {
      any_failed = true;
      std::cout << "[failed] " << r.cell.label << ": " << r.error << '\n';
    }
  }
  return any_failed ? kExitRuntimeError : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contact-plan design for a joint GNSS + libration-point constellation"};
  app.require_subcommand(1);

  const char* env_root = std::getenv("JCPD_OUTPUT_ROOT");
  std::string output_root = env_root ? env_root : "";
  app.add_option("--output-root", output_root,
                 "directory that relative output paths resolve against "
                 "(default: $JCPD_OUTPUT_ROOT or the working directory)");

  std::string config_path;
  std::vector<std::string> sets;
  std::string sweep;

  CLI::App* validate = app.add_subcommand("validate", "check a scenario config");
  validate->add_option("config", config_path, "scenario config file")->required();
  validate->add_option("--set", sets, "dotted-path override key=value");

  CLI::App* run = app.add_subcommand("run", "execute one scenario and write reports");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--set", sets, "dotted-path override key=value");

  CLI::App* compare = app.add_subcommand("compare", "run a sweep and join the metrics");
  compare->add_option("config", config_path, "scenario config file")->required();
  compare->add_option("--set", sets, "dotted-path override key=value");
  compare->add_option("--sweep", sweep, "sweep spec, e.g. \"configs=jcpd:group1,fcp;users=48,72\"")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(config_path, sets);
    if (app.got_subcommand(run)) return cmd_run(config_path, sets, output_root);
    if (app.got_subcommand(compare)) return cmd_compare(config_path, sets, sweep, output_root);
  } catch (const jcpd::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntimeError;
  }
  return kExitConfigError;
}
