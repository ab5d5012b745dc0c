#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "jcpd/errors.hpp"

namespace jcpd {

using NodeId = std::int32_t;
constexpr NodeId kNoNode = -1;

enum class NodeClass { GnssSatellite, LpSatellite, User, GroundStation };

// Antenna boresight convention: satellites and users point at the Earth
// center, ground stations point away from it (zenith).
enum class Boresight { EarthCenter, Zenith };

struct PointingSpec {
  double half_cone_deg = 180.0;
  Boresight boresight = Boresight::EarthCenter;
};

struct NodeInfo {
  std::string name;
  NodeClass cls = NodeClass::GnssSatellite;
  PointingSpec pointing;
};

class Roster {
 public:
  NodeId add(NodeInfo info) {
    if (find(info.name) != kNoNode)
      throw ConfigError("duplicate node name: " + info.name);
    nodes_.push_back(std::move(info));
    return static_cast<NodeId>(nodes_.size() - 1);
  }

  int size() const { return static_cast<int>(nodes_.size()); }

  const NodeInfo& at(NodeId id) const {
    if (id < 0 || id >= size())
      throw UnknownNodeError("node id out of range: " + std::to_string(id));
    return nodes_[static_cast<std::size_t>(id)];
  }
  const NodeInfo& operator[](NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }

  NodeClass cls(NodeId id) const { return at(id).cls; }
  const std::string& name(NodeId id) const { return at(id).name; }

  bool is_gnss(NodeId id) const { return cls(id) == NodeClass::GnssSatellite; }
  bool is_lp(NodeId id) const { return cls(id) == NodeClass::LpSatellite; }
  bool is_user(NodeId id) const { return cls(id) == NodeClass::User; }
  bool is_gs(NodeId id) const { return cls(id) == NodeClass::GroundStation; }
  bool is_satellite(NodeId id) const { return is_gnss(id) || is_lp(id); }

  NodeId find(std::string_view name) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].name == name) return static_cast<NodeId>(i);
    return kNoNode;
  }

  NodeId require(std::string_view name) const {
    NodeId id = find(name);
    if (id == kNoNode) throw UnknownNodeError("unknown node name: " + std::string(name));
    return id;
  }

  std::vector<NodeId> of_class(NodeClass c) const {
    std::vector<NodeId> out;
    for (NodeId i = 0; i < size(); ++i)
      if (nodes_[static_cast<std::size_t>(i)].cls == c) out.push_back(i);
    return out;
  }

 private:
  std::vector<NodeInfo> nodes_;
};

enum class LinkType { LpLp, LpUser, GnssLp, GnssUser, GnssGnss };
enum class SlotKind { Long, Short };

// Classifies a potential inter-node link. Ground stations never take part in
// matched links and user pairs never link each other.
inline bool linkable(NodeClass a, NodeClass b) {
  if (a == NodeClass::GroundStation || b == NodeClass::GroundStation) return false;
  if (a == NodeClass::User && b == NodeClass::User) return false;
  return true;
}

inline LinkType link_type_between(NodeClass a, NodeClass b) {
  if (a == NodeClass::GnssSatellite && b == NodeClass::GnssSatellite) return LinkType::GnssGnss;
  if (a == NodeClass::LpSatellite && b == NodeClass::LpSatellite) return LinkType::LpLp;
  if ((a == NodeClass::GnssSatellite && b == NodeClass::LpSatellite) ||
      (a == NodeClass::LpSatellite && b == NodeClass::GnssSatellite))
    return LinkType::GnssLp;
  if ((a == NodeClass::GnssSatellite && b == NodeClass::User) ||
      (a == NodeClass::User && b == NodeClass::GnssSatellite))
    return LinkType::GnssUser;
  if ((a == NodeClass::LpSatellite && b == NodeClass::User) ||
      (a == NodeClass::User && b == NodeClass::LpSatellite))
    return LinkType::LpUser;
  throw ConfigError("no link type defined for this node class pair");
}

// GNSS-GNSS links are scheduled on the short timescale, everything touching
// an LP satellite or a user on the long one.
inline SlotKind slot_unit(LinkType t) {
  return t == LinkType::GnssGnss ? SlotKind::Short : SlotKind::Long;
}

inline const char* to_string(LinkType t) {
  switch (t) {
    case LinkType::LpLp: return "lp_lp";
    case LinkType::LpUser: return "lp_user";
    case LinkType::GnssLp: return "gnss_lp";
    case LinkType::GnssUser: return "gnss_user";
    case LinkType::GnssGnss: return "gnss_gnss";
  }
  return "?";
}

inline const char* to_string(SlotKind k) { return k == SlotKind::Long ? "long" : "short"; }

}  // namespace jcpd
