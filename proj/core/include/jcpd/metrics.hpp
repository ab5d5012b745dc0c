#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "jcpd/scheduler.hpp"

namespace jcpd {

// Forward wait-to-next-anchor-link, averaged over every native slot of every
// satellite while it is not an anchor. Waits still open at the end of the
// horizon are censored there (value kept, occurrence counted).
struct DelayReport {
  double mean_wait_gnss_slots = 0.0;  // ShortSlots
  double mean_wait_lp_slots = 0.0;    // LongSlots
  double mean_wait_gnss_s = 0.0;
  double mean_wait_lp_s = 0.0;
  std::int64_t samples_gnss = 0;
  std::int64_t samples_lp = 0;
  std::int64_t censored_gnss = 0;
  std::int64_t censored_lp = 0;
};

// Effective-ranging counts replayed from the plan with a fresh last-contact
// table; must agree with the scheduler's own counters exactly.
struct RangingReport {
  double mean_per_gnss_per_state = 0.0;
  double mean_per_lp_per_state = 0.0;
  std::vector<std::int64_t> effective_total;  // per node
};

struct SatisfactionReport {
  double ratio = 1.0;  // mean over demanded users and states of min(got, L)/L
  std::int64_t users = 0;
  std::int64_t states = 0;
};

struct LinkCompositionReport {
  // Per-state mean link counts indexed by LinkType.
  std::array<double, 5> per_state_mean{};
  std::int64_t total_links = 0;
};

struct MetricsReport {
  DelayReport delay;
  RangingReport ranging;
  SatisfactionReport satisfaction;
  LinkCompositionReport composition;
  double runtime_s = 0.0;  // filled by the caller; not derived from the plan
};

DelayReport delay_report(const ContactPlan& plan, const Scenario& sc);
RangingReport ranging_report(const ContactPlan& plan, const Scenario& sc);
SatisfactionReport satisfaction_report(const ContactPlan& plan, const Scenario& sc);
LinkCompositionReport link_composition_report(const ContactPlan& plan);

// All four families in one pass; runtime_s is left at zero.
MetricsReport compute_metrics(const ContactPlan& plan, const Scenario& sc);

}  // namespace jcpd
