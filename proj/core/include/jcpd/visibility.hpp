#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "jcpd/clock.hpp"
#include "jcpd/ephemeris.hpp"
#include "jcpd/nodes.hpp"
#include "jcpd/vec3.hpp"

namespace jcpd {

struct Occluder {
  Vec3 center;
  double radius_km = 0.0;
};

// True when the open segment p1..p2 clears every occluding sphere (strictly
// greater closest-approach distance than the radius).
bool line_of_sight(const Vec3& p1, const Vec3& p2, const std::vector<Occluder>& occluders);

// True when the target lies inside the observer's pointing cone. Boresights
// are radial: EarthCenter points at the origin, Zenith away from it. A
// coincident target counts as inside.
bool within_pointing(const Vec3& observer, const PointingSpec& spec, const Vec3& target);

struct ContactEdge {
  NodeId a = 0;  // a < b
  NodeId b = 0;
  LinkType type = LinkType::GnssGnss;
};

// Visibility snapshot for one FSA state: edges that stay visible through the
// whole state plus per-node anchor flags (satellite reachable from some
// ground station at every sample).
struct ContactGraph {
  std::int64_t state_index = 0;
  int node_count = 0;
  std::vector<ContactEdge> edges;                    // normalized, sorted
  std::vector<std::uint8_t> anchor;                  // size node_count
  std::vector<std::vector<NodeId>> gnss_neighbors;   // GNSS-GNSS adjacency

  void rebuild_adjacency();
};

// Long-timescale subgraph: every edge except GNSS-GNSS.
ContactGraph long_graph(const ContactGraph& g);
// Short-timescale subgraph: GNSS-GNSS edges, minus edges touching busy nodes.
ContactGraph short_graph(const ContactGraph& g, const std::vector<NodeId>& busy_gnss);

struct VisibilityOptions {
  double sample_step_s = 0.0;  // 0 -> one ShortSlot
  double occlusion_margin_km = 0.0;
};

// Supplies per-state contact graphs to the scheduler.
class ContactGraphSource {
 public:
  virtual ~ContactGraphSource() = default;
  virtual ContactGraph state_graph(std::int64_t state_index) const = 0;
};

class VisibilityEngine : public ContactGraphSource {
 public:
  VisibilityEngine(const Roster& roster, const EphemerisModel& eph, SlotClock clock,
                   VisibilityOptions opt);

  bool pair_visible(NodeId a, NodeId b, double t_s) const;
  ContactGraph state_graph(std::int64_t state_index) const override;

 private:
  bool pair_visible_at(NodeId a, NodeId b, const Vec3& pa, const Vec3& pb,
                       const Vec3& moon) const;

  const Roster& roster_;
  const EphemerisModel& eph_;
  SlotClock clock_;
  VisibilityOptions opt_;
  double step_s_;
};

// Replays externally supplied contact topology instead of computing
// geometry; graphs must cover every scheduled state.
class TopologyFileSource : public ContactGraphSource {
 public:
  explicit TopologyFileSource(std::map<std::int64_t, ContactGraph> graphs)
      : graphs_(std::move(graphs)) {}
  ContactGraph state_graph(std::int64_t state_index) const override;

 private:
  std::map<std::int64_t, ContactGraph> graphs_;
};

}  // namespace jcpd
