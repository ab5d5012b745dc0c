#include "jcpd/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "jcpd/errors.hpp"

namespace jcpd {

namespace {

void require_complete(const ContactPlan& plan) {
  if (!plan.complete)
    throw IncompletePlanError("plan is incomplete (horizon truncated mid-state)");
  const std::int64_t longs = plan.clock.longs_per_state() * plan.n_states;
  const std::int64_t shorts = plan.clock.shorts_per_state() * plan.n_states;
  if (static_cast<std::int64_t>(plan.long_slots.size()) != longs ||
      static_cast<std::int64_t>(plan.short_slots.size()) != shorts ||
      static_cast<std::int64_t>(plan.anchors.size()) != plan.n_states)
    throw IncompletePlanError("plan slot records do not cover the declared horizon");
}

bool is_anchor_at(const ContactPlan& plan, std::int64_t state, NodeId id) {
  return plan.anchors[static_cast<std::size_t>(state)][static_cast<std::size_t>(id)] != 0;
}

}  // namespace

DelayReport delay_report(const ContactPlan& plan, const Scenario& sc) {
  require_complete(plan);
  const Roster& r = sc.roster;
  const SlotClock& clock = plan.clock;
  const std::int64_t m = clock.shorts_per_long();

  DelayReport rep;
  double sum_gnss = 0.0, sum_lp = 0.0;

  for (NodeId id = 0; id < r.size(); ++id) {
    if (!r.is_satellite(id)) continue;
    const bool gnss = r.is_gnss(id);
    const std::int64_t slots_per_state =
        gnss ? clock.shorts_per_state() : clock.longs_per_state();
    const std::int64_t total_slots = slots_per_state * plan.n_states;

    // Offload opportunities in native slot indices: anchor-partner links plus,
    // for every state this satellite anchors itself, that state's first slot
    // (it downlinks directly from then on).
    std::vector<std::int64_t> events;
    for (std::int64_t s = 0; s < plan.n_states; ++s)
      if (is_anchor_at(plan, s, id)) events.push_back(s * slots_per_state + 1);

    for (const auto& rec : plan.long_slots) {
      const std::int64_t state = clock.state_of_long(rec.slot);
      for (const auto& ln : rec.links) {
        if (ln.a != id && ln.b != id) continue;
        const NodeId other = ln.a == id ? ln.b : ln.a;
        if (!r.is_satellite(other) || !is_anchor_at(plan, state, other)) continue;
        if (gnss) {
          // A long-timescale link holds for the whole LongSlot, covering all
          // of its ShortSlots.
          const std::int64_t k0 = clock.first_short_of_long(rec.slot);
          for (std::int64_t k = k0; k < k0 + m; ++k) events.push_back(k);
        } else {
          events.push_back(rec.slot);
        }
      }
    }
    if (gnss) {
      for (const auto& rec : plan.short_slots) {
        const std::int64_t state = clock.state_of_short(rec.slot);
        for (const auto& ln : rec.links) {
          if (ln.a != id && ln.b != id) continue;
          const NodeId other = ln.a == id ? ln.b : ln.a;
          if (is_anchor_at(plan, state, other)) events.push_back(rec.slot);
        }
      }
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    std::size_t ev = 0;
    for (std::int64_t s = 0; s < plan.n_states; ++s) {
      if (is_anchor_at(plan, s, id)) continue;
      const std::int64_t first = s * slots_per_state + 1;
      for (std::int64_t slot = first; slot < first + slots_per_state; ++slot) {
        while (ev < events.size() && events[ev] < slot) ++ev;
        std::int64_t wait;
        if (ev < events.size()) {
          wait = events[ev] - slot;
        } else {
          wait = total_slots + 1 - slot;  // censored: earliest possible link
                                          // is one slot past the horizon
          ++(gnss ? rep.censored_gnss : rep.censored_lp);
        }
        if (gnss) {
          sum_gnss += static_cast<double>(wait);
          ++rep.samples_gnss;
        } else {
          sum_lp += static_cast<double>(wait);
          ++rep.samples_lp;
        }
      }
    }
  }

  if (rep.samples_gnss > 0) rep.mean_wait_gnss_slots = sum_gnss / static_cast<double>(rep.samples_gnss);
  if (rep.samples_lp > 0) rep.mean_wait_lp_slots = sum_lp / static_cast<double>(rep.samples_lp);
  rep.mean_wait_gnss_s = rep.mean_wait_gnss_slots * clock.short_slot_s;
  rep.mean_wait_lp_s = rep.mean_wait_lp_slots * clock.long_slot_s;
  return rep;
}

RangingReport ranging_report(const ContactPlan& plan, const Scenario& sc) {
  require_complete(plan);
  const Roster& r = sc.roster;
  const PotentialParams& p = sc.params;

  // Fresh last-contact table seeded like the scheduler's: the first slot of
  // the run already clears each pair's effectiveness interval.
  const std::size_t n = static_cast<std::size_t>(r.size());
  std::vector<std::int64_t> last(n * n, 0);
  auto idx = [n](NodeId a, NodeId b) {
    const auto lo = static_cast<std::size_t>(std::min(a, b));
    const auto hi = static_cast<std::size_t>(std::max(a, b));
    return lo * n + hi;
  };
  for (NodeId a = 0; a < r.size(); ++a)
    for (NodeId b = a + 1; b < r.size(); ++b)
      if (r.is_satellite(a) && r.is_satellite(b))
        last[idx(a, b)] = (r.is_gnss(a) && r.is_gnss(b)) ? -p.i_gnss : -p.i_lp;

  RangingReport rep;
  rep.effective_total.assign(n, 0);

  auto replay = [&](const std::vector<SlotRecord>& slots, bool short_scale) {
    for (const auto& rec : slots) {
      for (const auto& ln : rec.links) {
        if (!r.is_satellite(ln.a) || !r.is_satellite(ln.b)) continue;
        const bool gnss_pair = r.is_gnss(ln.a) && r.is_gnss(ln.b);
        if (gnss_pair != short_scale) continue;
        const std::int64_t interval = gnss_pair ? p.i_gnss : p.i_lp;
        if (rec.slot - last[idx(ln.a, ln.b)] > interval) {
          ++rep.effective_total[static_cast<std::size_t>(ln.a)];
          ++rep.effective_total[static_cast<std::size_t>(ln.b)];
          last[idx(ln.a, ln.b)] = rec.slot;
        } else if (sc.refresh_last_contact_on_repeat) {
          last[idx(ln.a, ln.b)] = rec.slot;
        }
      }
    }
  };
  replay(plan.long_slots, false);
  replay(plan.short_slots, true);

  std::int64_t gnss_nodes = 0, lp_nodes = 0, gnss_sum = 0, lp_sum = 0;
  for (NodeId id = 0; id < r.size(); ++id) {
    if (r.is_gnss(id)) {
      ++gnss_nodes;
      gnss_sum += rep.effective_total[static_cast<std::size_t>(id)];
    } else if (r.is_lp(id)) {
      ++lp_nodes;
      lp_sum += rep.effective_total[static_cast<std::size_t>(id)];
    }
  }
  const double states = static_cast<double>(plan.n_states);
  if (gnss_nodes > 0)
    rep.mean_per_gnss_per_state = static_cast<double>(gnss_sum) / (states * static_cast<double>(gnss_nodes));
  if (lp_nodes > 0)
    rep.mean_per_lp_per_state = static_cast<double>(lp_sum) / (states * static_cast<double>(lp_nodes));
  return rep;
}

SatisfactionReport satisfaction_report(const ContactPlan& plan, const Scenario& sc) {
  require_complete(plan);
  const Roster& r = sc.roster;

  std::vector<std::int64_t> target(static_cast<std::size_t>(r.size()), 0);
  for (const auto& d : sc.demands)
    target[static_cast<std::size_t>(d.user)] = d.links_per_state;

  SatisfactionReport rep;
  rep.states = plan.n_states;
  for (const auto& t : target)
    if (t > 0) ++rep.users;
  if (rep.users == 0 || plan.n_states == 0) return rep;  // vacuous: fully satisfied

  // Served user links per user per state, read back from the long records.
  std::vector<std::int64_t> got(static_cast<std::size_t>(r.size()), 0);
  double ratio_sum = 0.0;
  std::int64_t state = 0;
  auto flush_state = [&]() {
    for (NodeId id = 0; id < r.size(); ++id) {
      const auto u = static_cast<std::size_t>(id);
      if (target[u] <= 0) continue;
      const double served = static_cast<double>(std::min(got[u], target[u]));
      ratio_sum += served / static_cast<double>(target[u]);
      got[u] = 0;
    }
  };
  for (const auto& rec : plan.long_slots) {
    const std::int64_t s = plan.clock.state_of_long(rec.slot);
    if (s != state) {
      flush_state();
      state = s;
    }
    for (const auto& ln : rec.links) {
      if (r.is_user(ln.a)) ++got[static_cast<std::size_t>(ln.a)];
      if (r.is_user(ln.b)) ++got[static_cast<std::size_t>(ln.b)];
    }
  }
  flush_state();

  rep.ratio = ratio_sum / (static_cast<double>(rep.users) * static_cast<double>(plan.n_states));
  return rep;
}

LinkCompositionReport link_composition_report(const ContactPlan& plan) {
  require_complete(plan);
  LinkCompositionReport rep;
  std::array<std::int64_t, 5> counts{};
  for (const auto& rec : plan.long_slots)
    for (const auto& ln : rec.links) ++counts[static_cast<std::size_t>(ln.type)];
  for (const auto& rec : plan.short_slots)
    for (const auto& ln : rec.links) ++counts[static_cast<std::size_t>(ln.type)];
  for (std::size_t t = 0; t < counts.size(); ++t) {
    rep.total_links += counts[t];
    rep.per_state_mean[t] =
        static_cast<double>(counts[t]) / static_cast<double>(plan.n_states);
  }
  return rep;
}

MetricsReport compute_metrics(const ContactPlan& plan, const Scenario& sc) {
  MetricsReport rep;
  rep.delay = delay_report(plan, sc);
  rep.ranging = ranging_report(plan, sc);
  rep.satisfaction = satisfaction_report(plan, sc);
  rep.composition = link_composition_report(plan);
  return rep;
}

}  // namespace jcpd
