#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jcpd/clock.hpp"
#include "jcpd/ephemeris.hpp"
#include "jcpd/matching.hpp"
#include "jcpd/nodes.hpp"
#include "jcpd/potentials.hpp"
#include "jcpd/visibility.hpp"

namespace jcpd {

enum class Algorithm { Jcpd, Fcp };

inline const char* to_string(Algorithm a) { return a == Algorithm::Jcpd ? "jcpd" : "fcp"; }

// Complete description of one simulation run.
struct Scenario {
  std::string name = "scenario";
  Roster roster;
  EphemerisModel ephemeris;
  SlotClock clock;
  PotentialParams params;
  std::string params_group = "group1";  // label carried into reports
  std::vector<UserDemand> demands;
  std::int64_t horizon_states = 1;
  Algorithm algorithm = Algorithm::Jcpd;
  std::uint64_t seed = 1;
  VisibilityOptions visibility;
  // When set, a matched-but-not-effective pair still refreshes its
  // last-contact slot (default keeps the elapsed-time clock running).
  bool refresh_last_contact_on_repeat = false;
};

void validate_scenario(const Scenario& sc);

struct PlanLink {
  NodeId a = 0;  // a < b
  NodeId b = 0;
  LinkType type = LinkType::GnssGnss;
  double weight = 0.0;
};

struct SlotRecord {
  std::int64_t slot = 0;  // global 1-based index in the record's native unit
  std::vector<PlanLink> links;
};

struct ContactPlan {
  SlotClock clock;
  Algorithm algorithm = Algorithm::Jcpd;
  std::int64_t n_states = 0;
  std::vector<SlotRecord> long_slots;                 // one record per LongSlot
  std::vector<SlotRecord> short_slots;                // one record per ShortSlot
  std::vector<std::vector<std::uint8_t>> anchors;     // per state, per node
  std::vector<std::int64_t> effective_ranging_total;  // per node, scheduler-side count
  bool complete = false;
};

struct LongSlotResult {
  Matching matching;
  std::vector<NodeId> busy_gnss;  // GNSS matched on the long timescale
  std::vector<PlanLink> links;    // matched pairs with the weights the matcher saw
};

struct ShortSlotResult {
  Matching matching;
  std::vector<PlanLink> links;
};

// Single long-timescale scheduling round at global LongSlot n: builds the
// potential-weighted graph over the state's long edges, matches, and applies
// the post-matching state updates. Telemetry accrual for this LongSlot must
// already have happened.
LongSlotResult long_slot_cpd(std::int64_t n, ScheduleState& st, const ContactGraph& g,
                             const PotentialParams& p, bool refresh_on_repeat = false,
                             std::vector<std::int64_t>* effective_accum = nullptr);

// Short-timescale counterpart at global ShortSlot k; busy_gnss nodes (matched
// in the surrounding LongSlot) are excluded.
ShortSlotResult short_slot_cpd(std::int64_t k, ScheduleState& st, const ContactGraph& g,
                               const std::vector<NodeId>& busy_gnss, const PotentialParams& p,
                               bool refresh_on_repeat = false,
                               std::vector<std::int64_t>* effective_accum = nullptr);

// Full potential-driven run over the scenario horizon.
ContactPlan run_jcpd(const Scenario& sc, const ContactGraphSource& graphs);

// Fairness baseline: same two-timescale structure, edge weights
// 1/(1+c_i) + 1/(1+c_j) over per-state served-link counters, and users leave
// the long graph once their per-state demand is met.
ContactPlan run_fcp(const Scenario& sc, const ContactGraphSource& graphs);

// Dispatch on sc.algorithm.
ContactPlan run_scenario(const Scenario& sc, const ContactGraphSource& graphs);

}  // namespace jcpd
