#include "jcpd/potentials.hpp"

#include <cmath>
#include <string>

#include "jcpd/errors.hpp"

namespace jcpd {

PotentialParams PotentialParams::group1() { return PotentialParams{}; }

PotentialParams PotentialParams::group2() {
  PotentialParams p;
  p.c_e_lp = 170.0;
  p.b_e_lp = 500.0;
  return p;
}

PotentialParams PotentialParams::group3() {
  PotentialParams p = group2();
  p.c_user = 100.0;
  return p;
}

PotentialParams PotentialParams::preset(std::string_view name) {
  if (name == "group1") return group1();
  if (name == "group2") return group2();
  if (name == "group3") return group3();
  throw ConfigError("unknown parameter group '" + std::string(name) +
                    "' (known presets: group1, group2, group3)");
}

void PotentialParams::validate() const {
  if (i_gnss < 1 || i_lp < 1 || i_user < 1)
    throw ConfigError("params: effectiveness intervals must be >= 1");
  if (n_gnss < 0 || n_lp < 0) throw ConfigError("params: expected link counts must be >= 0");
  for (double v : {c_c_gnss, c_c_lp, h_gnss_lp, h_gnss_gnss, h_lp_gnss, h_lp_lp, c_r_gnss,
                   c_r_lp, b_r_gnss, b_r_lp, c_user, b_user, c_e_lp, c_e_user, b_e_lp, b_e_user})
    if (!std::isfinite(v)) throw ConfigError("params: all constants must be finite");
}

ScheduleState::ScheduleState(const Roster& roster, const PotentialParams& params,
                             const std::vector<UserDemand>& demands)
    : roster_(&roster), n_(static_cast<std::size_t>(roster.size())) {
  const int n = roster.size();
  telemetry.assign(n, 0);
  ranging_got.assign(n, 0);
  user_got.assign(n, 0);
  user_target.assign(n, 0);
  anchor.assign(n, 0);
  m_.assign(n_ * n_, 0);

  for (const auto& d : demands) {
    if (d.user < 0 || d.user >= n)
      throw ConfigError("demand: user id out of range: " + std::to_string(d.user));
    if (!roster.is_user(d.user))
      throw ConfigError("demand: node " + roster.name(d.user) + " is not a user");
    if (d.links_per_state < 0) throw ConfigError("demand: negative link count");
    user_target[d.user] = d.links_per_state;
  }

  // Seed last-contact indices one interval in the past so slot 1 already
  // satisfies each effectiveness condition.
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      std::int64_t init = 0;
      if (roster.is_satellite(a) && roster.is_satellite(b))
        init = roster.is_gnss(a) && roster.is_gnss(b) ? -params.i_gnss : -params.i_lp;
      else if ((roster.is_satellite(a) && roster.is_user(b)) ||
               (roster.is_user(a) && roster.is_satellite(b)))
        init = -params.i_user;
      set_last_contact(a, b, init);
    }
  }
}

void ScheduleState::begin_state(const ContactGraph& g) {
  if (g.node_count != roster_->size())
    throw ConfigError("schedule state: contact graph node count mismatch");
  anchor.assign(g.anchor.begin(), g.anchor.end());
  std::fill(ranging_got.begin(), ranging_got.end(), 0);
  std::fill(user_got.begin(), user_got.end(), 0);
  for (NodeId id = 0; id < roster_->size(); ++id)
    if (anchor[id]) telemetry[id] = 0;  // direct downlink, nothing buffered
}

void accrue_telemetry(ScheduleState& st, SlotKind kind) {
  const Roster& r = st.roster();
  const NodeClass cls =
      kind == SlotKind::Long ? NodeClass::LpSatellite : NodeClass::GnssSatellite;
  for (NodeId id = 0; id < r.size(); ++id)
    if (r.cls(id) == cls && !st.anchor[id]) ++st.telemetry[id];
}

double comm_potential(NodeId i, NodeId j, const ScheduleState& st, const PotentialParams& p) {
  const Roster& r = st.roster();
  if (!r.is_satellite(i) || !r.is_satellite(j)) return 0.0;
  if (st.anchor[i] || !st.anchor[j]) return 0.0;  // data flows non-anchor -> anchor
  double cc = r.is_gnss(i) ? p.c_c_gnss : p.c_c_lp;
  double h;
  if (r.is_gnss(i))
    h = r.is_gnss(j) ? p.h_gnss_gnss : p.h_gnss_lp;
  else
    h = r.is_gnss(j) ? p.h_lp_gnss : p.h_lp_lp;
  return cc * static_cast<double>(st.telemetry[i]) * h;
}

double ranging_potential(NodeId i, NodeId j, std::int64_t n, const ScheduleState& st,
                         const PotentialParams& p) {
  const Roster& r = st.roster();
  if (!r.is_satellite(i) || !r.is_satellite(j)) return 0.0;
  const bool gnss_pair = r.is_gnss(i) && r.is_gnss(j);
  const std::int64_t interval = gnss_pair ? p.i_gnss : p.i_lp;
  const std::int64_t m = st.last_contact(i, j);
  const std::int64_t target = r.is_gnss(i) ? p.n_gnss : p.n_lp;
  if (n - m <= interval || st.ranging_got[i] >= target) return 0.0;
  const double c = r.is_gnss(i) ? p.c_r_gnss : p.c_r_lp;
  const double bias = r.is_gnss(i) ? p.b_r_gnss : p.b_r_lp;
  return c * static_cast<double>(target - st.ranging_got[i]) *
             static_cast<double>(n - m - interval) +
         bias;
}

double user_potential(NodeId u, NodeId j, std::int64_t n, const ScheduleState& st,
                      const PotentialParams& p) {
  const Roster& r = st.roster();
  if (!r.is_user(u) || !r.is_satellite(j)) return 0.0;
  const std::int64_t m = st.last_contact(u, j);
  const std::int64_t target = st.user_target[u];
  if (n - m <= p.i_user || st.user_got[u] >= target) return 0.0;
  return p.c_user * static_cast<double>(target - st.user_got[u]) *
             static_cast<double>(n - m - p.i_user) +
         p.b_user;
}

double exclusion_potential(NodeId i, NodeId j, std::int64_t /*n*/, const ScheduleState& st,
                           const ContactGraph& g, const PotentialParams& p) {
  const Roster& r = st.roster();
  if (!r.is_gnss(i)) return 0.0;
  double ce, be;
  if (r.is_lp(j)) {
    ce = p.c_e_lp;
    be = p.b_e_lp;
  } else if (r.is_user(j)) {
    ce = p.c_e_user;
    be = p.b_e_user;
  } else {
    return 0.0;
  }
  double dval;
  if (!st.anchor[i]) {
    dval = static_cast<double>(st.telemetry[i]);
  } else {
    // An anchor holds no data itself; it would be pulled away from relaying
    // for its visible non-anchor GNSS neighbours instead.
    std::int64_t sum = 0, cnt = 0;
    for (NodeId nb : g.gnss_neighbors[i]) {
      if (!st.anchor[nb]) {
        sum += st.telemetry[nb];
        ++cnt;
      }
    }
    dval = cnt > 0 ? static_cast<double>(sum) / static_cast<double>(cnt) : 0.0;
  }
  double v = ce * (dval + static_cast<double>(p.n_gnss - st.ranging_got[i])) + be;
  return v > 0.0 ? v : 0.0;
}

double edge_weight_long(NodeId i, NodeId j, std::int64_t n, const ScheduleState& st,
                        const ContactGraph& g, const PotentialParams& p) {
  const Roster& r = st.roster();
  const NodeClass ci = r.cls(i), cj = r.cls(j);
  if (!linkable(ci, cj)) throw WrongGraphError("edge_weight_long: pair cannot link");
  const LinkType type = link_type_between(ci, cj);
  switch (type) {
    case LinkType::GnssGnss:
      throw WrongGraphError("edge_weight_long: GNSS-GNSS pairs belong to the short timescale");
    case LinkType::LpLp:
      return comm_potential(i, j, st, p) + comm_potential(j, i, st, p) +
             ranging_potential(i, j, n, st, p) + ranging_potential(j, i, n, st, p);
    case LinkType::GnssLp: {
      NodeId gnss = r.is_gnss(i) ? i : j;
      NodeId lp = r.is_gnss(i) ? j : i;
      return comm_potential(i, j, st, p) + comm_potential(j, i, st, p) +
             ranging_potential(i, j, n, st, p) + ranging_potential(j, i, n, st, p) -
             exclusion_potential(gnss, lp, n, st, g, p);
    }
    case LinkType::LpUser: {
      NodeId user = r.is_user(i) ? i : j;
      NodeId lp = r.is_user(i) ? j : i;
      return user_potential(user, lp, n, st, p);
    }
    case LinkType::GnssUser: {
      NodeId user = r.is_user(i) ? i : j;
      NodeId gnss = r.is_user(i) ? j : i;
      return user_potential(user, gnss, n, st, p) -
             exclusion_potential(gnss, user, n, st, g, p);
    }
  }
  throw WrongGraphError("edge_weight_long: unsupported link type");
}

double edge_weight_short(NodeId i, NodeId j, std::int64_t k, const ScheduleState& st,
                         const PotentialParams& p) {
  const Roster& r = st.roster();
  if (!r.is_gnss(i) || !r.is_gnss(j))
    throw WrongGraphError("edge_weight_short: only GNSS-GNSS pairs are scheduled here");
  return comm_potential(i, j, st, p) + comm_potential(j, i, st, p) +
         ranging_potential(i, j, k, st, p) + ranging_potential(j, i, k, st, p);
}

}  // namespace jcpd
