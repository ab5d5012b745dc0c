#pragma once

namespace jcpd {

// Physical constants used by the geometry model. Distances in km, times in
// seconds, angles in degrees at API boundaries (radians internally).
constexpr double kEarthRadiusKm = 6371.0;
constexpr double kMoonRadiusKm = 1737.0;
constexpr double kEarthGmKm3S2 = 398600.4418;
constexpr double kSiderealDayS = 86164.0905;
constexpr double kSiderealMonthS = 2360591.5;  // 27.321661 days
constexpr double kEarthMoonDistKm = 384400.0;
constexpr double kEarthMoonMassRatio = 0.01215;  // m_moon / (m_earth + m_moon)

constexpr double kPi = 3.14159265358979323846;
constexpr double deg2rad(double d) { return d * kPi / 180.0; }
constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

constexpr const char* kVersion = "0.1.0";

}  // namespace jcpd
