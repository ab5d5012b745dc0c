#include "jcpd/scheduler.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "jcpd/errors.hpp"

namespace jcpd {

void validate_scenario(const Scenario& sc) {
  sc.clock.validate();
  sc.params.validate();
  if (sc.horizon_states < 1) throw ConfigError("scenario: horizon must cover at least one state");
  std::set<NodeId> seen;
  for (const auto& d : sc.demands) {
    if (!seen.insert(d.user).second)
      throw ConfigError("scenario: user appears twice in demand list: " +
                        sc.roster.name(d.user));
  }
  for (NodeId id = 0; id < sc.roster.size(); ++id)
    if (!sc.ephemeris.has_source(id))
      throw ConfigError("scenario: node " + sc.roster.name(id) + " has no ephemeris source");
}

namespace {

void check_matching_validity(const Matching& m) {
  std::set<NodeId> seen;
  for (const auto& pr : m.pairs) {
    if (!seen.insert(pr.first).second || !seen.insert(pr.second).second)
      throw std::logic_error("matching uses a node terminal twice in one slot");
  }
}

// Shared post-matching bookkeeping for one matched pair. Slot index n is in
// the pair's native unit.
void postprocess_pair(NodeId i, NodeId j, std::int64_t n, ScheduleState& st,
                      const PotentialParams& p, bool refresh_on_repeat,
                      std::vector<std::int64_t>* effective_accum) {
  const Roster& r = st.roster();
  if (r.is_satellite(i) && r.is_satellite(j)) {
    // Data handover: a non-anchor matched to an anchor empties its buffer.
    if (!st.anchor[i] && st.anchor[j]) st.telemetry[i] = 0;
    if (!st.anchor[j] && st.anchor[i]) st.telemetry[j] = 0;
    const bool gnss_pair = r.is_gnss(i) && r.is_gnss(j);
    const std::int64_t interval = gnss_pair ? p.i_gnss : p.i_lp;
    if (n - st.last_contact(i, j) > interval) {
      ++st.ranging_got[i];
      ++st.ranging_got[j];
      st.set_last_contact(i, j, n);
      if (effective_accum) {
        ++(*effective_accum)[i];
        ++(*effective_accum)[j];
      }
    } else if (refresh_on_repeat) {
      st.set_last_contact(i, j, n);
    }
  } else {
    NodeId user = r.is_user(i) ? i : j;
    NodeId sat = r.is_user(i) ? j : i;
    ++st.user_got[user];
    st.set_last_contact(user, sat, n);
  }
}

// Matches the positively weighted subset of the candidate edges and records
// the matched pairs together with the weights the matcher saw.
struct MatchOutcome {
  Matching matching;
  std::vector<PlanLink> links;
};

MatchOutcome match_edges(const std::vector<ContactEdge>& edges,
                         const std::vector<double>& weights, const Roster& r) {
  WeightedGraph wg;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (weights[e] > 0.0) wg.add_edge(edges[e].a, edges[e].b, weights[e]);

  MatchOutcome out;
  out.matching = max_weight_matching(wg);
  check_matching_validity(out.matching);
  out.links.reserve(out.matching.pairs.size());
  for (const auto& pr : out.matching.pairs) {
    double w = 0.0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].a == pr.first && edges[e].b == pr.second) {
        w = weights[e];
        break;
      }
    }
    out.links.push_back(
        {pr.first, pr.second, link_type_between(r.cls(pr.first), r.cls(pr.second)), w});
  }
  return out;
}

}  // namespace

LongSlotResult long_slot_cpd(std::int64_t n, ScheduleState& st, const ContactGraph& g,
                             const PotentialParams& p, bool refresh_on_repeat,
                             std::vector<std::int64_t>* effective_accum) {
  std::vector<ContactEdge> edges;
  edges.reserve(g.edges.size());
  for (const auto& e : g.edges)
    if (e.type != LinkType::GnssGnss) edges.push_back(e);

  std::vector<double> weights(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e)
    weights[e] = edge_weight_long(edges[e].a, edges[e].b, n, st, g, p);

  MatchOutcome mo = match_edges(edges, weights, st.roster());

  LongSlotResult res;
  res.matching = std::move(mo.matching);
  res.links = std::move(mo.links);
  for (const auto& pr : res.matching.pairs) {
    postprocess_pair(pr.first, pr.second, n, st, p, refresh_on_repeat, effective_accum);
    if (st.roster().is_gnss(pr.first)) res.busy_gnss.push_back(pr.first);
    if (st.roster().is_gnss(pr.second)) res.busy_gnss.push_back(pr.second);
  }
  std::sort(res.busy_gnss.begin(), res.busy_gnss.end());
  return res;
}

ShortSlotResult short_slot_cpd(std::int64_t k, ScheduleState& st, const ContactGraph& g,
                               const std::vector<NodeId>& busy_gnss, const PotentialParams& p,
                               bool refresh_on_repeat,
                               std::vector<std::int64_t>* effective_accum) {
  std::vector<std::uint8_t> busy(g.node_count, 0);
  for (NodeId b : busy_gnss) busy[static_cast<std::size_t>(b)] = 1;

  std::vector<ContactEdge> edges;
  std::vector<double> weights;
  for (const auto& e : g.edges) {
    if (e.type != LinkType::GnssGnss || busy[e.a] || busy[e.b]) continue;
    edges.push_back(e);
    weights.push_back(edge_weight_short(e.a, e.b, k, st, p));
  }

  MatchOutcome mo = match_edges(edges, weights, st.roster());
  ShortSlotResult res;
  res.matching = std::move(mo.matching);
  res.links = std::move(mo.links);
  for (const auto& pr : res.matching.pairs)
    postprocess_pair(pr.first, pr.second, k, st, p, refresh_on_repeat, effective_accum);
  return res;
}

namespace {

// Fairness baseline weights: per-state served-link counters, shared between
// both timescales.
struct FairnessCounters {
  std::vector<std::int64_t> links;
  double weight(NodeId a, NodeId b) const {
    return 1.0 / (1.0 + static_cast<double>(links[a])) +
           1.0 / (1.0 + static_cast<double>(links[b]));
  }
};

struct FcpSlotResult {
  std::vector<PlanLink> links;
  std::vector<NodeId> busy_gnss;
};

FcpSlotResult fcp_slot(SlotKind kind, std::int64_t n, ScheduleState& st, const ContactGraph& g,
                       const std::vector<NodeId>& busy_gnss, FairnessCounters& fair,
                       const PotentialParams& p, bool refresh_on_repeat,
                       std::vector<std::int64_t>* effective_accum) {
  const Roster& r = st.roster();
  std::vector<std::uint8_t> busy(g.node_count, 0);
  for (NodeId b : busy_gnss) busy[static_cast<std::size_t>(b)] = 1;

  std::vector<ContactEdge> edges;
  std::vector<double> weights;
  for (const auto& e : g.edges) {
    const bool is_short_edge = e.type == LinkType::GnssGnss;
    if ((kind == SlotKind::Short) != is_short_edge) continue;
    if (is_short_edge && (busy[e.a] || busy[e.b])) continue;
    // Users leave the long graph once their per-state demand is met.
    if (r.is_user(e.a) && st.user_got[e.a] >= st.user_target[e.a]) continue;
    if (r.is_user(e.b) && st.user_got[e.b] >= st.user_target[e.b]) continue;
    edges.push_back(e);
    weights.push_back(fair.weight(e.a, e.b));
  }

  MatchOutcome mo = match_edges(edges, weights, r);
  FcpSlotResult res;
  res.links = std::move(mo.links);
  for (const auto& pr : mo.matching.pairs) {
    postprocess_pair(pr.first, pr.second, n, st, p, refresh_on_repeat, effective_accum);
    ++fair.links[pr.first];
    ++fair.links[pr.second];
    if (kind == SlotKind::Long) {
      if (r.is_gnss(pr.first)) res.busy_gnss.push_back(pr.first);
      if (r.is_gnss(pr.second)) res.busy_gnss.push_back(pr.second);
    }
  }
  std::sort(res.busy_gnss.begin(), res.busy_gnss.end());
  return res;
}

ContactPlan run_impl(const Scenario& sc, const ContactGraphSource& graphs, Algorithm alg) {
  validate_scenario(sc);

  const SlotClock& clock = sc.clock;
  const std::int64_t longs_per_state = clock.longs_per_state();
  const std::int64_t shorts_per_long = clock.shorts_per_long();

  ScheduleState st(sc.roster, sc.params, sc.demands);
  FairnessCounters fair;
  fair.links.assign(sc.roster.size(), 0);

  ContactPlan plan;
  plan.clock = clock;
  plan.algorithm = alg;
  plan.n_states = sc.horizon_states;
  plan.effective_ranging_total.assign(sc.roster.size(), 0);
  plan.long_slots.reserve(static_cast<std::size_t>(sc.horizon_states * longs_per_state));
  plan.short_slots.reserve(
      static_cast<std::size_t>(sc.horizon_states * longs_per_state * shorts_per_long));

  for (std::int64_t state = 0; state < sc.horizon_states; ++state) {
    ContactGraph g = graphs.state_graph(state);
    if (g.node_count != sc.roster.size())
      throw ConfigError("contact graph node count differs from roster");
    st.begin_state(g);
    std::fill(fair.links.begin(), fair.links.end(), 0);
    plan.anchors.emplace_back(g.anchor.begin(), g.anchor.end());

    for (std::int64_t ls = 0; ls < longs_per_state; ++ls) {
      const std::int64_t n = clock.first_long_of_state(state) + ls;
      st.clock.state = state;
      st.clock.long_slot = n;
      st.clock.short_slot = clock.first_short_of_long(n);
      accrue_telemetry(st, SlotKind::Long);

      SlotRecord lrec;
      lrec.slot = n;
      std::vector<NodeId> busy;

      if (alg == Algorithm::Jcpd) {
        LongSlotResult res = long_slot_cpd(n, st, g, sc.params,
                                           sc.refresh_last_contact_on_repeat,
                                           &plan.effective_ranging_total);
        busy = std::move(res.busy_gnss);
        lrec.links = std::move(res.links);
      } else {
        FcpSlotResult res = fcp_slot(SlotKind::Long, n, st, g, {}, fair, sc.params,
                                     sc.refresh_last_contact_on_repeat,
                                     &plan.effective_ranging_total);
        busy = std::move(res.busy_gnss);
        lrec.links = std::move(res.links);
      }
      plan.long_slots.push_back(std::move(lrec));

      for (std::int64_t ss = 0; ss < shorts_per_long; ++ss) {
        const std::int64_t k = clock.first_short_of_long(n) + ss;
        st.clock.short_slot = k;
        accrue_telemetry(st, SlotKind::Short);

        SlotRecord srec;
        srec.slot = k;
        if (alg == Algorithm::Jcpd) {
          ShortSlotResult res = short_slot_cpd(k, st, g, busy, sc.params,
                                               sc.refresh_last_contact_on_repeat,
                                               &plan.effective_ranging_total);
          srec.links = std::move(res.links);
        } else {
          FcpSlotResult res = fcp_slot(SlotKind::Short, k, st, g, busy, fair, sc.params,
                                       sc.refresh_last_contact_on_repeat,
                                       &plan.effective_ranging_total);
          srec.links = std::move(res.links);
        }
        plan.short_slots.push_back(std::move(srec));
      }
    }
  }
  plan.complete = true;
  return plan;
}

}  // namespace

ContactPlan run_jcpd(const Scenario& sc, const ContactGraphSource& graphs) {
  return run_impl(sc, graphs, Algorithm::Jcpd);
}

ContactPlan run_fcp(const Scenario& sc, const ContactGraphSource& graphs) {
  return run_impl(sc, graphs, Algorithm::Fcp);
}

ContactPlan run_scenario(const Scenario& sc, const ContactGraphSource& graphs) {
  return run_impl(sc, graphs, sc.algorithm);
}

}  // namespace jcpd
