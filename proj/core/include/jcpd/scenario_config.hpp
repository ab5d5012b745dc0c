#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "jcpd/scheduler.hpp"

namespace jcpd {

// JSON scenario document: parsing, strict schema validation, dotted-path
// overrides, canonicalization and hashing, and construction of a runnable
// Scenario. Relative file references resolve against the document's
// directory.
class ScenarioConfig {
 public:
  struct OutputOptions {
    std::string directory = "out";
    bool write_plan = true;
    bool export_topology = false;
  };

  struct TopologyOverride {
    std::string links_csv;   // resolved paths
    std::string anchors_csv;
  };

  static ScenarioConfig from_file(const std::string& path);
  static ScenarioConfig from_json_text(const std::string& text,
                                       const std::string& base_dir = ".");

  // --set style assignment "a.b.c=value"; the value is parsed as JSON when
  // possible and kept as a string otherwise. Paths address objects only.
  void apply_override(const std::string& assignment);

  // Every schema or invariant violation, one message per entry; empty means
  // the document is valid and buildable.
  std::vector<std::string> validate() const;

  // Builds the runnable scenario; throws ConfigError listing every
  // diagnostic when the document is invalid.
  Scenario build() const;

  // Fully materialized document (defaults filled in, keys sorted), compact
  // JSON. Throws on invalid documents. Re-parsing this text yields the same
  // canonical text and scenario hash.
  std::string canonical_text() const;

  // FNV-1a over the canonical document minus the output section, so runs
  // that differ only in where they write share an identity.
  std::uint64_t scenario_hash() const;
  std::string scenario_id() const;  // fixed-width hex of scenario_hash()

  OutputOptions output_options() const;
  std::optional<TopologyOverride> topology_override() const;

  std::string group() const;
  std::string name() const;

  const std::string& text() const { return text_; }
  const std::string& base_dir() const { return base_dir_; }

 private:
  std::string text_ = "{}";
  std::string base_dir_ = ".";
};

std::uint64_t fnv1a64(const void* data, std::size_t len);

}  // namespace jcpd
