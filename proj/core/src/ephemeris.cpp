#include "jcpd/ephemeris.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace jcpd {

KeplerElements KeplerElements::circular(double a_km, double inc_deg, double raan_deg,
                                        double arg_lat_epoch_deg) {
  if (a_km <= 0.0) throw ConfigError("kepler: semi-major axis must be positive");
  KeplerElements el;
  el.a_km = a_km;
  el.inc_deg = inc_deg;
  el.raan_deg = raan_deg;
  el.arg_lat_epoch_deg = arg_lat_epoch_deg;
  el.period_s = 2.0 * kPi * std::sqrt(a_km * a_km * a_km / kEarthGmKm3S2);
  return el;
}

Vec3 propagate_kepler(const KeplerElements& el, double t_s) {
  double u = deg2rad(el.arg_lat_epoch_deg) + 2.0 * kPi * t_s / el.period_s;
  double raan = deg2rad(el.raan_deg);
  double inc = deg2rad(el.inc_deg);
  double cu = std::cos(u), su = std::sin(u);
  double co = std::cos(raan), so = std::sin(raan);
  double ci = std::cos(inc), si = std::sin(inc);
  return {el.a_km * (cu * co - su * so * ci), el.a_km * (cu * so + su * co * ci),
          el.a_km * (su * si)};
}

double moon_phase_rad(const RotatingFrameSpec& frame, double t_s) {
  return deg2rad(frame.moon_phase_epoch_deg) + 2.0 * kPi * t_s / frame.moon_period_s;
}

Vec3 moon_position(const RotatingFrameSpec& frame, double t_s) {
  double th = moon_phase_rad(frame, t_s);
  return {frame.earth_moon_dist_km * std::cos(th), frame.earth_moon_dist_km * std::sin(th), 0.0};
}

double l3_distance_factor(double mass_ratio) {
  // Equilibrium beyond the primary, opposite the secondary: the Earth
  // distance r (in separation units) solves
  //   (1-mu)/r^2 + mu/(1+r)^2 = r + mu.
  double mu = mass_ratio;
  auto f = [mu](double r) {
    return (1.0 - mu) / (r * r) + mu / ((1.0 + r) * (1.0 + r)) - r - mu;
  };
  double lo = 0.5, hi = 1.5;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Vec3 lp_position(const LpPlacement& lp, const RotatingFrameSpec& frame, double t_s) {
  double d = frame.earth_moon_dist_km;
  double th_m = moon_phase_rad(frame, t_s);
  double off = deg2rad(lp.phase_offset_deg);
  switch (lp.point) {
    case LpPoint::L4: {
      double a = th_m + deg2rad(60.0) + off;
      return {d * std::cos(a), d * std::sin(a), 0.0};
    }
    case LpPoint::L5: {
      double a = th_m - deg2rad(60.0) + off;
      return {d * std::cos(a), d * std::sin(a), 0.0};
    }
    case LpPoint::L3: {
      double factor =
          lp.l3_radius_factor > 0.0 ? lp.l3_radius_factor : l3_distance_factor(frame.mass_ratio);
      double a = th_m + kPi + off;
      double r = factor * d;
      return {r * std::cos(a), r * std::sin(a), 0.0};
    }
    case LpPoint::Dro: {
      // Circle around the Moon, traversed retrograde in the frame that
      // co-rotates with the Moon.
      double period = lp.dro_period_s > 0.0 ? lp.dro_period_s : frame.moon_period_s / 2.0;
      double alpha = off - 2.0 * kPi * t_s / period;
      double xr = d + lp.dro_radius_km * std::cos(alpha);
      double yr = lp.dro_radius_km * std::sin(alpha);
      double c = std::cos(th_m), s = std::sin(th_m);
      return {xr * c - yr * s, xr * s + yr * c, 0.0};
    }
  }
  throw ConfigError("lp_position: unknown libration point");
}

Vec3 gs_position(const GroundStationGeo& gs, const RotatingFrameSpec& frame, double t_s) {
  double th = deg2rad(gs.lon_deg + frame.greenwich_epoch_deg) +
              2.0 * kPi * t_s / frame.earth_rotation_period_s;
  double lat = deg2rad(gs.lat_deg);
  return {kEarthRadiusKm * std::cos(lat) * std::cos(th),
          kEarthRadiusKm * std::cos(lat) * std::sin(th), kEarthRadiusKm * std::sin(lat)};
}

void EphemerisTable::add_sample(double t_s, Vec3 pos_km) {
  if (!times_.empty() && t_s <= times_.back())
    throw ConfigError("ephemeris table: sample times must be strictly increasing");
  times_.push_back(t_s);
  points_.push_back(pos_km);
}

EphemerisTable EphemerisTable::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("ephemeris table: cannot open " + path);
  EphemerisTable tab;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    // Tolerate a single header row.
    if (lineno == 1 && line.find("time_s") != std::string::npos) continue;
    std::stringstream ss(line);
    std::string cell;
    double vals[4];
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ss, cell, ','))
        throw ConfigError("ephemeris table: bad row at " + path + ":" + std::to_string(lineno));
      try {
        vals[c] = std::stod(cell);
      } catch (const std::exception&) {
        throw ConfigError("ephemeris table: non-numeric cell at " + path + ":" +
                          std::to_string(lineno));
      }
    }
    tab.add_sample(vals[0], {vals[1], vals[2], vals[3]});
  }
  if (tab.size() < 1) throw ConfigError("ephemeris table: no samples in " + path);
  return tab;
}

Vec3 EphemerisTable::position(double t_s) const {
  if (times_.empty()) throw EphemerisRangeError("ephemeris table: empty");
  if (t_s < times_.front() || t_s > times_.back())
    throw EphemerisRangeError("ephemeris table: t=" + std::to_string(t_s) +
                              " outside [" + std::to_string(times_.front()) + ", " +
                              std::to_string(times_.back()) + "]");
  auto it = std::lower_bound(times_.begin(), times_.end(), t_s);
  std::size_t hi = static_cast<std::size_t>(it - times_.begin());
  if (hi == 0) return points_.front();
  if (times_[hi] == t_s) return points_[hi];
  std::size_t lo = hi - 1;
  double f = (t_s - times_[lo]) / (times_[hi] - times_[lo]);
  return points_[lo] + (points_[hi] - points_[lo]) * f;
}

void EphemerisModel::set_source(NodeId id, EphemerisSource src) {
  if (id < 0) throw UnknownNodeError("ephemeris: negative node id");
  if (static_cast<std::size_t>(id) >= sources_.size()) sources_.resize(id + 1);
  sources_[id] = std::move(src);
}

bool EphemerisModel::has_source(NodeId id) const {
  return id >= 0 && static_cast<std::size_t>(id) < sources_.size() &&
         sources_[static_cast<std::size_t>(id)].has_value();
}

Vec3 EphemerisModel::node_position(NodeId id, double t_s) const {
  if (!has_source(id))
    throw UnknownNodeError("ephemeris: no source for node id " + std::to_string(id));
  const EphemerisSource& src = *sources_[static_cast<std::size_t>(id)];
  if (const auto* kep = std::get_if<KeplerElements>(&src)) return propagate_kepler(*kep, t_s);
  if (const auto* lp = std::get_if<LpPlacement>(&src)) return lp_position(*lp, frame_, t_s);
  if (const auto* gs = std::get_if<GroundStationGeo>(&src)) return gs_position(*gs, frame_, t_s);
  return std::get<EphemerisTable>(src).position(t_s);
}

}  // namespace jcpd
