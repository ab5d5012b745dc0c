#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "jcpd/constants.hpp"
#include "jcpd/errors.hpp"
#include "jcpd/nodes.hpp"
#include "jcpd/vec3.hpp"

namespace jcpd {

// Circular orbit around the Earth, inertial equatorial frame. arg_lat is the
// argument of latitude at t = 0 (angle from the ascending node).
struct KeplerElements {
  double a_km = 0.0;
  double inc_deg = 0.0;
  double raan_deg = 0.0;
  double arg_lat_epoch_deg = 0.0;
  double period_s = 0.0;

  // Period derived from the semi-major axis via Earth's GM.
  static KeplerElements circular(double a_km, double inc_deg, double raan_deg,
                                 double arg_lat_epoch_deg);
};

Vec3 propagate_kepler(const KeplerElements& el, double t_s);

// Planar Earth-Moon system: the Moon moves on a circle of fixed radius in
// the inertial XY plane. greenwich_epoch_deg fixes Earth's rotation phase.
struct RotatingFrameSpec {
  double earth_moon_dist_km = kEarthMoonDistKm;
  double moon_period_s = kSiderealMonthS;
  double moon_phase_epoch_deg = 0.0;
  double mass_ratio = kEarthMoonMassRatio;
  double greenwich_epoch_deg = 0.0;
  double earth_rotation_period_s = kSiderealDayS;
};

Vec3 moon_position(const RotatingFrameSpec& frame, double t_s);
double moon_phase_rad(const RotatingFrameSpec& frame, double t_s);

// Distance of the collinear point beyond the Earth (opposite the secondary)
// in units of the primary separation; root of the classical quintic.
double l3_distance_factor(double mass_ratio);

enum class LpPoint { L3, L4, L5, Dro };

struct LpPlacement {
  LpPoint point = LpPoint::L4;
  double phase_offset_deg = 0.0;  // along-circle offset (DRO phase, user jitter)
  double dro_radius_km = 70000.0;
  double dro_period_s = 0.0;      // 0 -> half the Moon period
  double l3_radius_factor = 0.0;  // 0 -> l3_distance_factor(frame.mass_ratio)
};

Vec3 lp_position(const LpPlacement& lp, const RotatingFrameSpec& frame, double t_s);

struct GroundStationGeo {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

Vec3 gs_position(const GroundStationGeo& gs, const RotatingFrameSpec& frame, double t_s);

// Tabulated ephemeris with linear interpolation between samples.
class EphemerisTable {
 public:
  void add_sample(double t_s, Vec3 pos_km);
  // CSV columns: time_s,x_km,y_km,z_km (one optional header line).
  static EphemerisTable from_csv(const std::string& path);
  Vec3 position(double t_s) const;
  std::size_t size() const { return times_.size(); }

 private:
  std::vector<double> times_;
  std::vector<Vec3> points_;
};

using EphemerisSource = std::variant<KeplerElements, LpPlacement, GroundStationGeo, EphemerisTable>;

// Position provider for every node in a scenario.
class EphemerisModel {
 public:
  EphemerisModel() = default;
  explicit EphemerisModel(RotatingFrameSpec frame) : frame_(frame) {}

  void set_source(NodeId id, EphemerisSource src);
  bool has_source(NodeId id) const;
  Vec3 node_position(NodeId id, double t_s) const;
  Vec3 moon(double t_s) const { return moon_position(frame_, t_s); }

  RotatingFrameSpec& frame() { return frame_; }
  const RotatingFrameSpec& frame() const { return frame_; }

 private:
  RotatingFrameSpec frame_;
  std::vector<std::optional<EphemerisSource>> sources_;
};

}  // namespace jcpd
