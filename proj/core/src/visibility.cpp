#include "jcpd/visibility.hpp"

#include <algorithm>
#include <cmath>

#include "jcpd/constants.hpp"
#include "jcpd/errors.hpp"

namespace jcpd {

namespace {
constexpr double kCoincidentKm = 1e-9;
}

bool line_of_sight(const Vec3& p1, const Vec3& p2, const std::vector<Occluder>& occluders) {
  Vec3 d = p2 - p1;
  double dd = d.norm2();
  for (const auto& occ : occluders) {
    double dist;
    if (dd <= kCoincidentKm * kCoincidentKm) {
      dist = (p1 - occ.center).norm();
    } else {
      double t = (occ.center - p1).dot(d) / dd;
      t = std::clamp(t, 0.0, 1.0);
      dist = (p1 + d * t - occ.center).norm();
    }
    if (!(dist > occ.radius_km)) return false;
  }
  return true;
}

bool within_pointing(const Vec3& observer, const PointingSpec& spec, const Vec3& target) {
  Vec3 to_target = target - observer;
  double dist = to_target.norm();
  if (dist <= kCoincidentKm) return true;
  double r = observer.norm();
  if (r <= kCoincidentKm) return true;  // degenerate observer at the origin
  Vec3 boresight = spec.boresight == Boresight::EarthCenter ? observer * (-1.0 / r)
                                                            : observer * (1.0 / r);
  double c = std::clamp(boresight.dot(to_target) / dist, -1.0, 1.0);
  return std::acos(c) <= deg2rad(spec.half_cone_deg) + 1e-12;
}

void ContactGraph::rebuild_adjacency() {
  gnss_neighbors.assign(node_count, {});
  for (const auto& e : edges) {
    if (e.type == LinkType::GnssGnss) {
      gnss_neighbors[e.a].push_back(e.b);
      gnss_neighbors[e.b].push_back(e.a);
    }
  }
}

ContactGraph long_graph(const ContactGraph& g) {
  ContactGraph out;
  out.state_index = g.state_index;
  out.node_count = g.node_count;
  out.anchor = g.anchor;
  for (const auto& e : g.edges)
    if (e.type != LinkType::GnssGnss) out.edges.push_back(e);
  out.rebuild_adjacency();
  return out;
}

ContactGraph short_graph(const ContactGraph& g, const std::vector<NodeId>& busy_gnss) {
  ContactGraph out;
  out.state_index = g.state_index;
  out.node_count = g.node_count;
  out.anchor = g.anchor;
  std::vector<std::uint8_t> busy(g.node_count, 0);
  for (NodeId b : busy_gnss)
    if (b >= 0 && b < g.node_count) busy[b] = 1;
  for (const auto& e : g.edges)
    if (e.type == LinkType::GnssGnss && !busy[e.a] && !busy[e.b]) out.edges.push_back(e);
  out.rebuild_adjacency();
  return out;
}

VisibilityEngine::VisibilityEngine(const Roster& roster, const EphemerisModel& eph,
                                   SlotClock clock, VisibilityOptions opt)
    : roster_(roster), eph_(eph), clock_(clock), opt_(opt) {
  clock_.validate();
  step_s_ = opt_.sample_step_s > 0.0 ? opt_.sample_step_s
                                     : static_cast<double>(clock_.short_slot_s);
  double states = static_cast<double>(clock_.fsa_state_s);
  double ratio = states / step_s_;
  if (std::abs(ratio - std::round(ratio)) > 1e-9)
    throw ConfigError("visibility: sample step must divide the FSA state length");
}

bool VisibilityEngine::pair_visible_at(NodeId a, NodeId b, const Vec3& pa, const Vec3& pb,
                                       const Vec3& moon) const {
  const NodeInfo& na = roster_[a];
  const NodeInfo& nb = roster_[b];
  if ((pa - pb).norm() <= kCoincidentKm) return true;  // co-located nodes

  bool gs_involved =
      na.cls == NodeClass::GroundStation || nb.cls == NodeClass::GroundStation;
  std::vector<Occluder> occ;
  occ.reserve(2);
  // A ground station sits on the Earth sphere itself; its horizon mask is
  // the zenith cone, so only the Moon can additionally block it.
  if (!gs_involved) occ.push_back({{0, 0, 0}, kEarthRadiusKm + opt_.occlusion_margin_km});
  occ.push_back({moon, kMoonRadiusKm + opt_.occlusion_margin_km});

  if (!line_of_sight(pa, pb, occ)) return false;
  if (!within_pointing(pa, na.pointing, pb)) return false;
  if (!within_pointing(pb, nb.pointing, pa)) return false;
  return true;
}

bool VisibilityEngine::pair_visible(NodeId a, NodeId b, double t_s) const {
  if (a == b) return false;
  const NodeClass ca = roster_.cls(a), cb = roster_.cls(b);
  bool gs_pair = ca == NodeClass::GroundStation && cb == NodeClass::GroundStation;
  if (gs_pair) return false;
  return pair_visible_at(a, b, eph_.node_position(a, t_s), eph_.node_position(b, t_s),
                         eph_.moon(t_s));
}

ContactGraph VisibilityEngine::state_graph(std::int64_t state_index) const {
  const int n = roster_.size();
  const double t0 = clock_.state_start_s(state_index);
  const int nsamples = static_cast<int>(std::llround(clock_.fsa_state_s / step_s_)) + 1;

  std::vector<Vec3> moon(nsamples);
  for (int s = 0; s < nsamples; ++s) moon[s] = eph_.moon(t0 + s * step_s_);

  std::vector<std::vector<Vec3>> pos(n, std::vector<Vec3>(nsamples));
  for (NodeId id = 0; id < n; ++id)
    for (int s = 0; s < nsamples; ++s) pos[id][s] = eph_.node_position(id, t0 + s * step_s_);

  ContactGraph g;
  g.state_index = state_index;
  g.node_count = n;
  g.anchor.assign(n, 0);

  std::vector<NodeId> stations = roster_.of_class(NodeClass::GroundStation);

  // Anchor flags: at every sample the satellite is visible from at least
  // one ground station.
  for (NodeId id = 0; id < n; ++id) {
    if (!roster_.is_satellite(id)) continue;
    bool anchored = true;
    for (int s = 0; s < nsamples && anchored; ++s) {
      bool any = false;
      for (NodeId gs : stations) {
        if (pair_visible_at(id, gs, pos[id][s], pos[gs][s], moon[s])) {
          any = true;
          break;
        }
      }
      anchored = any;
    }
    if (anchored && !stations.empty()) g.anchor[id] = 1;
  }

  for (NodeId a = 0; a < n; ++a) {
    const NodeClass ca = roster_.cls(a);
    if (ca == NodeClass::GroundStation) continue;
    for (NodeId b = a + 1; b < n; ++b) {
      const NodeClass cb = roster_.cls(b);
      if (!linkable(ca, cb)) continue;
      bool vis = true;
      for (int s = 0; s < nsamples && vis; ++s)
        vis = pair_visible_at(a, b, pos[a][s], pos[b][s], moon[s]);
      if (vis) g.edges.push_back({a, b, link_type_between(ca, cb)});
    }
  }
  g.rebuild_adjacency();
  return g;
}

ContactGraph TopologyFileSource::state_graph(std::int64_t state_index) const {
  auto it = graphs_.find(state_index);
  if (it == graphs_.end())
    throw ConfigError("topology source: no graph for state " + std::to_string(state_index));
  return it->second;
}

}  // namespace jcpd
