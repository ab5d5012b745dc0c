#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "jcpd/nodes.hpp"
#include "jcpd/visibility.hpp"

namespace jcpd {

// Weighting constants for the potential-driven scheduler. Suffixes _gnss/_lp
// select by the owning satellite's class; intervals are in the pair's native
// slot unit (ShortSlots for GNSS pairs, LongSlots otherwise).
struct PotentialParams {
  // Communication (telemetry download pressure toward anchors).
  double c_c_gnss = 200.0;
  double c_c_lp = 100.0;
  double h_gnss_lp = 2.0;  // relay height factor, non-anchor GNSS via LP anchor
  double h_gnss_gnss = 7.0;
  double h_lp_gnss = 5.0;
  double h_lp_lp = 5.0;
  // Ranging (inter-satellite measurement demand).
  double c_r_gnss = 15.0;
  double c_r_lp = 20.0;
  double b_r_gnss = 800.0;
  double b_r_lp = 500.0;
  std::int64_t n_gnss = 60;  // expected effective ranging links per state
  std::int64_t n_lp = 5;
  std::int64_t i_gnss = 19;  // effectiveness interval, ShortSlots
  std::int64_t i_lp = 20;    // effectiveness interval, LongSlots
  // User service.
  double c_user = 10.0;
  double b_user = 300.0;
  std::int64_t i_user = 20;  // service interval, LongSlots
  // Exclusion (opportunity cost of pulling a GNSS satellite off the short
  // timescale), selected by the partner's class.
  double c_e_lp = 120.0;
  double c_e_user = 150.0;
  double b_e_lp = 200.0;
  double b_e_user = 100.0;

  static PotentialParams group1();
  static PotentialParams group2();
  static PotentialParams group3();
  static PotentialParams preset(std::string_view name);

  void validate() const;
};

struct UserDemand {
  NodeId user = kNoNode;
  std::int64_t links_per_state = 0;
};

struct ClockPosition {
  std::int64_t state = 0;       // 0-based FSA state index
  std::int64_t long_slot = 1;   // global 1-based LongSlot index
  std::int64_t short_slot = 1;  // global 1-based ShortSlot index
};

// Mutable bookkeeping the scheduler carries across slots: telemetry buffers,
// per-state effective link counts, and last-contact slot indices per pair.
// Last-contact entries live in the pair's native slot unit and are seeded so
// that the very first slot already clears each effectiveness interval.
class ScheduleState {
 public:
  ScheduleState(const Roster& roster, const PotentialParams& params,
                const std::vector<UserDemand>& demands = {});

  const Roster& roster() const { return *roster_; }

  std::vector<std::int64_t> telemetry;     // D, per node
  std::vector<std::int64_t> ranging_got;   // effective ranging links this state
  std::vector<std::int64_t> user_got;      // user links served this state
  std::vector<std::int64_t> user_target;   // requested links per state (users)
  std::vector<std::uint8_t> anchor;        // anchor flags of the current state
  ClockPosition clock;

  std::int64_t last_contact(NodeId a, NodeId b) const { return m_[idx(a, b)]; }
  void set_last_contact(NodeId a, NodeId b, std::int64_t v) { m_[idx(a, b)] = v; }

  // Enters a new FSA state: adopts its anchor flags, zeroes the per-state
  // counters, and clears telemetry of satellites that can downlink directly.
  void begin_state(const ContactGraph& g);

 private:
  std::size_t idx(NodeId a, NodeId b) const {
    NodeId lo = a < b ? a : b, hi = a < b ? b : a;
    return static_cast<std::size_t>(lo) * n_ + static_cast<std::size_t>(hi);
  }
  const Roster* roster_;
  std::size_t n_;
  std::vector<std::int64_t> m_;
};

// One telemetry unit per native slot for the matching satellite class;
// anchors generate nothing (their data goes straight down).
void accrue_telemetry(ScheduleState& st, SlotKind kind);

// Pull of buffered telemetry on non-anchor i toward anchor j; zero in every
// other direction or class combination.
double comm_potential(NodeId i, NodeId j, const ScheduleState& st, const PotentialParams& p);

// Ranging demand of satellite i toward satellite j at native slot n.
double ranging_potential(NodeId i, NodeId j, std::int64_t n, const ScheduleState& st,
                         const PotentialParams& p);

// Service demand of user u toward satellite j at LongSlot n.
double user_potential(NodeId u, NodeId j, std::int64_t n, const ScheduleState& st,
                      const PotentialParams& p);

// Cost of occupying GNSS satellite i with partner j (LP satellite or user)
// during LongSlot n. Anchors substitute the mean telemetry of their visible
// non-anchor GNSS neighbours (empty mean = 0).
double exclusion_potential(NodeId i, NodeId j, std::int64_t n, const ScheduleState& st,
                           const ContactGraph& g, const PotentialParams& p);

// Edge weights of the two matching graphs. Throws WrongGraphError when the
// pair does not belong to the requested timescale.
double edge_weight_long(NodeId i, NodeId j, std::int64_t n, const ScheduleState& st,
                        const ContactGraph& g, const PotentialParams& p);
double edge_weight_short(NodeId i, NodeId j, std::int64_t k, const ScheduleState& st,
                         const PotentialParams& p);

}  // namespace jcpd
