#include "jcpd/scenario_config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "jcpd/errors.hpp"

namespace jcpd {

using nlohmann::json;
namespace fs = std::filesystem;

std::uint64_t fnv1a64(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

// ---- typed document access with error collection -------------------------

using Errors = std::vector<std::string>;

bool has(const json& obj, const char* key) { return obj.is_object() && obj.contains(key); }

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed,
                Errors& errs) {
  if (!obj.is_object()) return;
  for (const auto& it : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) known = true;
    if (!known) errs.push_back(path + ": unknown key '" + it.key() + "'");
  }
}

const json* get_obj(const json& parent, const char* key, const std::string& path, Errors& errs) {
  if (!has(parent, key)) return nullptr;
  const json& v = parent.at(key);
  if (!v.is_object()) {
    errs.push_back(path + "." + key + ": expected an object");
    return nullptr;
  }
  return &v;
}

const json* get_arr(const json& parent, const char* key, const std::string& path, Errors& errs) {
  if (!has(parent, key)) return nullptr;
  const json& v = parent.at(key);
  if (!v.is_array()) {
    errs.push_back(path + "." + key + ": expected an array");
    return nullptr;
  }
  return &v;
}

double get_num(const json& parent, const char* key, double def, const std::string& path,
               Errors& errs) {
  if (!has(parent, key)) return def;
  const json& v = parent.at(key);
  if (!v.is_number()) {
    errs.push_back(path + "." + key + ": expected a number");
    return def;
  }
  return v.get<double>();
}

std::int64_t get_int(const json& parent, const char* key, std::int64_t def,
                     const std::string& path, Errors& errs) {
  if (!has(parent, key)) return def;
  const json& v = parent.at(key);
  if (!v.is_number_integer()) {
    errs.push_back(path + "." + key + ": expected an integer");
    return def;
  }
  return v.get<std::int64_t>();
}

bool get_bool(const json& parent, const char* key, bool def, const std::string& path,
              Errors& errs) {
  if (!has(parent, key)) return def;
  const json& v = parent.at(key);
  if (!v.is_boolean()) {
    errs.push_back(path + "." + key + ": expected a boolean");
    return def;
  }
  return v.get<bool>();
}

std::string get_str(const json& parent, const char* key, std::string def, const std::string& path,
                    Errors& errs) {
  if (!has(parent, key)) return def;
  const json& v = parent.at(key);
  if (!v.is_string()) {
    errs.push_back(path + "." + key + ": expected a string");
    return def;
  }
  return v.get<std::string>();
}

// ---- parsed document ------------------------------------------------------

struct WalkerSpec {
  std::int64_t count = 24;
  std::int64_t planes = 3;
  std::int64_t phasing = 1;
  double altitude_km = 21528.0;
  double inclination_deg = 55.0;
};

struct IgsoSpec {
  std::string name;
  double lon_deg = 118.0;
  double phase_deg = 0.0;
  double inclination_deg = 55.0;
};

struct GeoSpec {
  std::string name;
  double lon_deg = 0.0;
};

struct LpSpec {
  std::string name;
  LpPoint point = LpPoint::L4;
  LpPlacement placement;
};

struct GsSpec {
  std::string name;
  GroundStationGeo geo;
};

struct UsersSpec {
  std::int64_t count = 48;
  std::int64_t links_per_state = 4;
  double jitter_deg = 0.0;
  std::vector<std::string> placement;  // cycled; defaults to all LP names
  bool placement_given = false;
};

struct PointingSpecSet {
  double meo_half_cone_deg = 60.0;
  double geo_igso_half_cone_deg = 45.0;
  double lp_half_cone_deg = 75.0;
  double gs_half_cone_deg = 85.0;
  double user_half_cone_deg = 180.0;
};

struct Parsed {
  std::string name = "scenario";
  Algorithm algorithm = Algorithm::Jcpd;
  std::uint64_t seed = 1;
  std::string group = "group1";
  PotentialParams params;
  json param_overrides = json::object();
  SlotClock clock;
  std::int64_t horizon_s = 604800;
  WalkerSpec walker;
  std::vector<IgsoSpec> igso;
  std::vector<GeoSpec> geo;
  double geo_igso_altitude_km = 35786.0;
  std::vector<LpSpec> lp;
  std::vector<GsSpec> stations;
  UsersSpec users;
  PointingSpecSet pointing;
  VisibilityOptions vis;
  RotatingFrameSpec frame;
  bool refresh_last_contact_on_repeat = false;
  std::vector<std::pair<std::string, std::string>> eph_overrides;  // node -> csv path
  std::optional<ScenarioConfig::TopologyOverride> topo;
  ScenarioConfig::OutputOptions output;
};

struct ParamField {
  const char* name;
  double PotentialParams::*dptr;
  std::int64_t PotentialParams::*iptr;
};

const ParamField kParamFields[] = {
    {"c_c_gnss", &PotentialParams::c_c_gnss, nullptr},
    {"c_c_lp", &PotentialParams::c_c_lp, nullptr},
    {"h_gnss_lp", &PotentialParams::h_gnss_lp, nullptr},
    {"h_gnss_gnss", &PotentialParams::h_gnss_gnss, nullptr},
    {"h_lp_gnss", &PotentialParams::h_lp_gnss, nullptr},
    {"h_lp_lp", &PotentialParams::h_lp_lp, nullptr},
    {"c_r_gnss", &PotentialParams::c_r_gnss, nullptr},
    {"c_r_lp", &PotentialParams::c_r_lp, nullptr},
    {"b_r_gnss", &PotentialParams::b_r_gnss, nullptr},
    {"b_r_lp", &PotentialParams::b_r_lp, nullptr},
    {"n_gnss", nullptr, &PotentialParams::n_gnss},
    {"n_lp", nullptr, &PotentialParams::n_lp},
    {"i_gnss", nullptr, &PotentialParams::i_gnss},
    {"i_lp", nullptr, &PotentialParams::i_lp},
    {"c_user", &PotentialParams::c_user, nullptr},
    {"b_user", &PotentialParams::b_user, nullptr},
    {"i_user", nullptr, &PotentialParams::i_user},
    {"c_e_lp", &PotentialParams::c_e_lp, nullptr},
    {"c_e_user", &PotentialParams::c_e_user, nullptr},
    {"b_e_lp", &PotentialParams::b_e_lp, nullptr},
    {"b_e_user", &PotentialParams::b_e_user, nullptr},
};

LpPoint parse_lp_point(const std::string& s, const std::string& path, Errors& errs) {
  if (s == "L3") return LpPoint::L3;
  if (s == "L4") return LpPoint::L4;
  if (s == "L5") return LpPoint::L5;
  if (s == "DRO") return LpPoint::Dro;
  errs.push_back(path + ": unknown libration point '" + s + "' (expected L3, L4, L5 or DRO)");
  return LpPoint::L4;
}

const char* lp_point_name(LpPoint p) {
  switch (p) {
    case LpPoint::L3: return "L3";
    case LpPoint::L4: return "L4";
    case LpPoint::L5: return "L5";
    case LpPoint::Dro: return "DRO";
  }
  return "?";
}

Parsed parse_all(const json& doc, Errors& errs) {
  Parsed pc;
  if (!doc.is_object()) {
    errs.push_back("config: top level must be an object");
    return pc;
  }
  check_keys(doc, "config",
             {"name", "algorithm", "seed", "group", "params", "clock", "horizon_s",
              "constellation", "ground_stations", "users", "pointing", "visibility", "frame",
              "scheduler", "ephemeris_overrides", "topology_override", "output"},
             errs);

  pc.name = get_str(doc, "name", pc.name, "config", errs);
  const std::string alg = get_str(doc, "algorithm", "jcpd", "config", errs);
  if (alg == "jcpd") {
    pc.algorithm = Algorithm::Jcpd;
  } else if (alg == "fcp") {
    pc.algorithm = Algorithm::Fcp;
  } else {
    errs.push_back("config.algorithm: expected \"jcpd\" or \"fcp\", got \"" + alg + "\"");
  }
  const std::int64_t seed = get_int(doc, "seed", 1, "config", errs);
  if (seed < 0)
    errs.push_back("config.seed: must be non-negative");
  else
    pc.seed = static_cast<std::uint64_t>(seed);

  pc.group = get_str(doc, "group", pc.group, "config", errs);
  std::string preset_name = pc.group;
  if (const json* pj = get_obj(doc, "params", "config", errs)) {
    pc.param_overrides = *pj;
    preset_name = get_str(*pj, "base", preset_name, "config.params", errs);
  }
  try {
    pc.params = PotentialParams::preset(preset_name);
  } catch (const ConfigError& e) {
    errs.push_back(std::string("config: ") + e.what());
  }
  for (const auto& it : pc.param_overrides.items()) {
    if (it.key() == "base") continue;
    const ParamField* field = nullptr;
    for (const auto& f : kParamFields)
      if (it.key() == f.name) field = &f;
    if (!field) {
      errs.push_back("config.params: unknown parameter field '" + it.key() + "'");
      continue;
    }
    if (field->dptr) {
      pc.params.*(field->dptr) = get_num(pc.param_overrides, field->name,
                                         pc.params.*(field->dptr), "config.params", errs);
    } else {
      pc.params.*(field->iptr) = get_int(pc.param_overrides, field->name,
                                         pc.params.*(field->iptr), "config.params", errs);
    }
  }
  try {
    pc.params.validate();
  } catch (const ConfigError& e) {
    errs.push_back(std::string("config.params: ") + e.what());
  }

  if (const json* cj = get_obj(doc, "clock", "config", errs)) {
    check_keys(*cj, "config.clock", {"short_slot_s", "long_slot_s", "fsa_state_s"}, errs);
    pc.clock.short_slot_s = get_int(*cj, "short_slot_s", pc.clock.short_slot_s, "config.clock", errs);
    pc.clock.long_slot_s = get_int(*cj, "long_slot_s", pc.clock.long_slot_s, "config.clock", errs);
    pc.clock.fsa_state_s = get_int(*cj, "fsa_state_s", pc.clock.fsa_state_s, "config.clock", errs);
  }
  try {
    pc.clock.validate();
  } catch (const ConfigError& e) {
    errs.push_back(std::string("config.clock: ") + e.what());
  }

  pc.horizon_s = get_int(doc, "horizon_s", pc.horizon_s, "config", errs);
  if (pc.horizon_s <= 0 || (pc.clock.fsa_state_s > 0 && pc.horizon_s % pc.clock.fsa_state_s != 0))
    errs.push_back("config.horizon_s: must be a positive multiple of the FSA state length");

  if (const json* cj = get_obj(doc, "constellation", "config", errs)) {
    check_keys(*cj, "config.constellation",
               {"walker", "igso", "geo", "geo_igso_altitude_km", "lp"}, errs);
    if (const json* wj = get_obj(*cj, "walker", "config.constellation", errs)) {
      const std::string p = "config.constellation.walker";
      check_keys(*wj, p, {"count", "planes", "phasing", "altitude_km", "inclination_deg"}, errs);
      pc.walker.count = get_int(*wj, "count", pc.walker.count, p, errs);
      pc.walker.planes = get_int(*wj, "planes", pc.walker.planes, p, errs);
      pc.walker.phasing = get_int(*wj, "phasing", pc.walker.phasing, p, errs);
      pc.walker.altitude_km = get_num(*wj, "altitude_km", pc.walker.altitude_km, p, errs);
      pc.walker.inclination_deg =
          get_num(*wj, "inclination_deg", pc.walker.inclination_deg, p, errs);
      if (pc.walker.count < 0) errs.push_back(p + ".count: must be non-negative");
      if (pc.walker.planes <= 0)
        errs.push_back(p + ".planes: must be positive");
      else if (pc.walker.count % pc.walker.planes != 0)
        errs.push_back(p + ": count must be divisible by planes");
      if (pc.walker.phasing < 0) errs.push_back(p + ".phasing: must be non-negative");
      if (pc.walker.altitude_km <= 0) errs.push_back(p + ".altitude_km: must be positive");
    }
    pc.geo_igso_altitude_km =
        get_num(*cj, "geo_igso_altitude_km", pc.geo_igso_altitude_km, "config.constellation", errs);
    if (pc.geo_igso_altitude_km <= 0)
      errs.push_back("config.constellation.geo_igso_altitude_km: must be positive");
    if (const json* aj = get_arr(*cj, "igso", "config.constellation", errs)) {
      for (std::size_t i = 0; i < aj->size(); ++i) {
        const std::string p = "config.constellation.igso[" + std::to_string(i) + "]";
        const json& e = (*aj)[i];
        if (!e.is_object()) {
          errs.push_back(p + ": expected an object");
          continue;
        }
        check_keys(e, p, {"name", "lon_deg", "phase_deg", "inclination_deg"}, errs);
        IgsoSpec s;
        s.name = get_str(e, "name", "IGSO" + std::to_string(i + 1), p, errs);
        s.lon_deg = get_num(e, "lon_deg", s.lon_deg, p, errs);
        s.phase_deg = get_num(e, "phase_deg", s.phase_deg, p, errs);
        s.inclination_deg = get_num(e, "inclination_deg", s.inclination_deg, p, errs);
        pc.igso.push_back(s);
      }
    } else if (!has(*cj, "igso")) {
      pc.igso = {{"IGSO1", 118.0, 0.0, 55.0}, {"IGSO2", 118.0, 120.0, 55.0},
                 {"IGSO3", 118.0, 240.0, 55.0}};
    }
    if (const json* aj = get_arr(*cj, "geo", "config.constellation", errs)) {
      for (std::size_t i = 0; i < aj->size(); ++i) {
        const std::string p = "config.constellation.geo[" + std::to_string(i) + "]";
        const json& e = (*aj)[i];
        if (!e.is_object()) {
          errs.push_back(p + ": expected an object");
          continue;
        }
        check_keys(e, p, {"name", "lon_deg"}, errs);
        GeoSpec s;
        s.name = get_str(e, "name", "GEO" + std::to_string(i + 1), p, errs);
        s.lon_deg = get_num(e, "lon_deg", s.lon_deg, p, errs);
        pc.geo.push_back(s);
      }
    } else if (!has(*cj, "geo")) {
      pc.geo = {{"GEO1", 80.0}, {"GEO2", 110.5}, {"GEO3", 140.0}};
    }
    if (const json* aj = get_arr(*cj, "lp", "config.constellation", errs)) {
      for (std::size_t i = 0; i < aj->size(); ++i) {
        const std::string p = "config.constellation.lp[" + std::to_string(i) + "]";
        const json& e = (*aj)[i];
        if (!e.is_object()) {
          errs.push_back(p + ": expected an object");
          continue;
        }
        check_keys(e, p,
                   {"name", "point", "phase_offset_deg", "dro_radius_km", "dro_period_s",
                    "l3_radius_factor"},
                   errs);
        LpSpec s;
        s.name = get_str(e, "name", "LP" + std::to_string(i + 1), p, errs);
        s.point = parse_lp_point(get_str(e, "point", "L4", p + ".point", errs), p + ".point", errs);
        s.placement.point = s.point;
        s.placement.phase_offset_deg =
            get_num(e, "phase_offset_deg", s.placement.phase_offset_deg, p, errs);
        s.placement.dro_radius_km = get_num(e, "dro_radius_km", s.placement.dro_radius_km, p, errs);
        s.placement.dro_period_s = get_num(e, "dro_period_s", s.placement.dro_period_s, p, errs);
        s.placement.l3_radius_factor =
            get_num(e, "l3_radius_factor", s.placement.l3_radius_factor, p, errs);
        if (s.placement.dro_radius_km <= 0) errs.push_back(p + ".dro_radius_km: must be positive");
        if (s.placement.dro_period_s < 0) errs.push_back(p + ".dro_period_s: must be non-negative");
        if (s.placement.l3_radius_factor < 0)
          errs.push_back(p + ".l3_radius_factor: must be non-negative");
        pc.lp.push_back(s);
      }
    } else if (!has(*cj, "lp")) {
      for (const char* n : {"L3", "L4", "L5", "DRO"}) {
        LpSpec s;
        s.name = n;
        s.point = parse_lp_point(n, "", errs);
        s.placement.point = s.point;
        pc.lp.push_back(s);
      }
    }
  } else if (!has(doc, "constellation")) {
    pc.igso = {{"IGSO1", 118.0, 0.0, 55.0}, {"IGSO2", 118.0, 120.0, 55.0},
               {"IGSO3", 118.0, 240.0, 55.0}};
    pc.geo = {{"GEO1", 80.0}, {"GEO2", 110.5}, {"GEO3", 140.0}};
    for (const char* n : {"L3", "L4", "L5", "DRO"}) {
      LpSpec s;
      s.name = n;
      s.point = parse_lp_point(n, "", errs);
      s.placement.point = s.point;
      pc.lp.push_back(s);
    }
  }

  if (const json* aj = get_arr(doc, "ground_stations", "config", errs)) {
    for (std::size_t i = 0; i < aj->size(); ++i) {
      const std::string p = "config.ground_stations[" + std::to_string(i) + "]";
      const json& e = (*aj)[i];
      if (!e.is_object()) {
        errs.push_back(p + ": expected an object");
        continue;
      }
      check_keys(e, p, {"name", "lat_deg", "lon_deg"}, errs);
      GsSpec s;
      s.name = get_str(e, "name", "GS" + std::to_string(i + 1), p, errs);
      s.geo.lat_deg = get_num(e, "lat_deg", 0.0, p, errs);
      s.geo.lon_deg = get_num(e, "lon_deg", 0.0, p, errs);
      if (s.geo.lat_deg < -90.0 || s.geo.lat_deg > 90.0)
        errs.push_back(p + ".lat_deg: must be in [-90, 90]");
      pc.stations.push_back(s);
    }
  } else if (!has(doc, "ground_stations")) {
    pc.stations = {{"GS_Jiamusi", {46.8, 130.3}},
                   {"GS_Kashi", {39.47, 75.99}},
                   {"GS_Sanya", {18.23, 109.02}}};
  }

  if (const json* uj = get_obj(doc, "users", "config", errs)) {
    check_keys(*uj, "config.users", {"count", "links_per_state", "jitter_deg", "placement"}, errs);
    pc.users.count = get_int(*uj, "count", pc.users.count, "config.users", errs);
    pc.users.links_per_state =
        get_int(*uj, "links_per_state", pc.users.links_per_state, "config.users", errs);
    pc.users.jitter_deg = get_num(*uj, "jitter_deg", pc.users.jitter_deg, "config.users", errs);
    if (pc.users.count < 0) errs.push_back("config.users.count: must be non-negative");
    if (pc.users.links_per_state < 0)
      errs.push_back("config.users.links_per_state: must be non-negative");
    if (pc.users.jitter_deg < 0) errs.push_back("config.users.jitter_deg: must be non-negative");
    if (const json* aj = get_arr(*uj, "placement", "config.users", errs)) {
      pc.users.placement_given = true;
      for (std::size_t i = 0; i < aj->size(); ++i) {
        const json& e = (*aj)[i];
        if (!e.is_string()) {
          errs.push_back("config.users.placement[" + std::to_string(i) + "]: expected a string");
          continue;
        }
        pc.users.placement.push_back(e.get<std::string>());
      }
    }
  }
  if (!pc.users.placement_given)
    for (const auto& s : pc.lp) pc.users.placement.push_back(s.name);
  for (const auto& pn : pc.users.placement) {
    bool found = false;
    for (const auto& s : pc.lp)
      if (s.name == pn) found = true;
    if (!found)
      errs.push_back("config.users.placement: unknown libration-point entry '" + pn + "'");
  }
  if (pc.users.count > 0 && pc.users.placement.empty())
    errs.push_back("config.users: no placement entries for a non-zero user count");

  if (const json* pj = get_obj(doc, "pointing", "config", errs)) {
    const std::string p = "config.pointing";
    check_keys(*pj, p,
               {"meo_half_cone_deg", "geo_igso_half_cone_deg", "lp_half_cone_deg",
                "gs_half_cone_deg", "user_half_cone_deg"},
               errs);
    pc.pointing.meo_half_cone_deg =
        get_num(*pj, "meo_half_cone_deg", pc.pointing.meo_half_cone_deg, p, errs);
    pc.pointing.geo_igso_half_cone_deg =
        get_num(*pj, "geo_igso_half_cone_deg", pc.pointing.geo_igso_half_cone_deg, p, errs);
    pc.pointing.lp_half_cone_deg =
        get_num(*pj, "lp_half_cone_deg", pc.pointing.lp_half_cone_deg, p, errs);
    pc.pointing.gs_half_cone_deg =
        get_num(*pj, "gs_half_cone_deg", pc.pointing.gs_half_cone_deg, p, errs);
    pc.pointing.user_half_cone_deg =
        get_num(*pj, "user_half_cone_deg", pc.pointing.user_half_cone_deg, p, errs);
    for (double v : {pc.pointing.meo_half_cone_deg, pc.pointing.geo_igso_half_cone_deg,
                     pc.pointing.lp_half_cone_deg, pc.pointing.gs_half_cone_deg,
                     pc.pointing.user_half_cone_deg})
      if (v < 0.0 || v > 180.0) {
        errs.push_back(p + ": half-cone angles must be in [0, 180]");
        break;
      }
  }

  if (const json* vj = get_obj(doc, "visibility", "config", errs)) {
    const std::string p = "config.visibility";
    check_keys(*vj, p, {"sample_step_s", "occlusion_margin_km"}, errs);
    pc.vis.sample_step_s = get_num(*vj, "sample_step_s", pc.vis.sample_step_s, p, errs);
    pc.vis.occlusion_margin_km =
        get_num(*vj, "occlusion_margin_km", pc.vis.occlusion_margin_km, p, errs);
    if (pc.vis.sample_step_s < 0) errs.push_back(p + ".sample_step_s: must be non-negative");
    if (pc.vis.occlusion_margin_km < 0)
      errs.push_back(p + ".occlusion_margin_km: must be non-negative");
  }

  if (const json* fj = get_obj(doc, "frame", "config", errs)) {
    const std::string p = "config.frame";
    check_keys(*fj, p,
               {"earth_moon_dist_km", "moon_period_s", "moon_phase_epoch_deg", "mass_ratio",
                "greenwich_epoch_deg", "earth_rotation_period_s"},
               errs);
    pc.frame.earth_moon_dist_km =
        get_num(*fj, "earth_moon_dist_km", pc.frame.earth_moon_dist_km, p, errs);
    pc.frame.moon_period_s = get_num(*fj, "moon_period_s", pc.frame.moon_period_s, p, errs);
    pc.frame.moon_phase_epoch_deg =
        get_num(*fj, "moon_phase_epoch_deg", pc.frame.moon_phase_epoch_deg, p, errs);
    pc.frame.mass_ratio = get_num(*fj, "mass_ratio", pc.frame.mass_ratio, p, errs);
    pc.frame.greenwich_epoch_deg =
        get_num(*fj, "greenwich_epoch_deg", pc.frame.greenwich_epoch_deg, p, errs);
    pc.frame.earth_rotation_period_s =
        get_num(*fj, "earth_rotation_period_s", pc.frame.earth_rotation_period_s, p, errs);
    if (pc.frame.earth_moon_dist_km <= 0 || pc.frame.moon_period_s <= 0 ||
        pc.frame.earth_rotation_period_s <= 0)
      errs.push_back(p + ": distances and periods must be positive");
    if (pc.frame.mass_ratio <= 0 || pc.frame.mass_ratio >= 0.5)
      errs.push_back(p + ".mass_ratio: must be in (0, 0.5)");
  }

  if (const json* sj = get_obj(doc, "scheduler", "config", errs)) {
    check_keys(*sj, "config.scheduler", {"refresh_last_contact_on_repeat"}, errs);
    pc.refresh_last_contact_on_repeat = get_bool(
        *sj, "refresh_last_contact_on_repeat", pc.refresh_last_contact_on_repeat,
        "config.scheduler", errs);
  }

  if (const json* ej = get_obj(doc, "ephemeris_overrides", "config", errs)) {
    for (const auto& it : ej->items()) {
      if (!it.value().is_string()) {
        errs.push_back("config.ephemeris_overrides." + it.key() + ": expected a file path string");
        continue;
      }
      pc.eph_overrides.emplace_back(it.key(), it.value().get<std::string>());
    }
  }

  if (has(doc, "topology_override") && !doc.at("topology_override").is_null()) {
    if (const json* tj = get_obj(doc, "topology_override", "config", errs)) {
      const std::string p = "config.topology_override";
      check_keys(*tj, p, {"links_csv", "anchors_csv"}, errs);
      ScenarioConfig::TopologyOverride t;
      t.links_csv = get_str(*tj, "links_csv", "", p, errs);
      t.anchors_csv = get_str(*tj, "anchors_csv", "", p, errs);
      if (t.links_csv.empty() || t.anchors_csv.empty())
        errs.push_back(p + ": both links_csv and anchors_csv are required");
      pc.topo = t;
    }
  }

  if (const json* oj = get_obj(doc, "output", "config", errs)) {
    const std::string p = "config.output";
    check_keys(*oj, p, {"directory", "write_plan", "export_topology"}, errs);
    pc.output.directory = get_str(*oj, "directory", pc.output.directory, p, errs);
    pc.output.write_plan = get_bool(*oj, "write_plan", pc.output.write_plan, p, errs);
    pc.output.export_topology =
        get_bool(*oj, "export_topology", pc.output.export_topology, p, errs);
    if (pc.output.directory.empty()) errs.push_back(p + ".directory: must not be empty");
  }

  if (pc.vis.sample_step_s > 0 && pc.clock.fsa_state_s > 0) {
    const double q = static_cast<double>(pc.clock.fsa_state_s) / pc.vis.sample_step_s;
    if (std::abs(q - std::llround(q)) > 1e-9)
      errs.push_back("config.visibility.sample_step_s: must divide the FSA state length");
  }

  return pc;
}

std::string resolve_path(const std::string& base_dir, const std::string& rel) {
  fs::path p(rel);
  if (p.is_absolute()) return p.string();
  return (fs::path(base_dir) / p).string();
}

// Deterministic per-purpose substream: draws for one user never depend on
// how many other users exist.
double jitter_draw(std::uint64_t seed, std::int64_t index, double amplitude_deg) {
  if (amplitude_deg <= 0.0) return 0.0;
  unsigned char buf[8 + 11 + 8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(seed >> (8 * i));
  const char* label = "user_jitter";
  for (int i = 0; i < 11; ++i) buf[8 + i] = static_cast<unsigned char>(label[i]);
  const auto u = static_cast<std::uint64_t>(index);
  for (int i = 0; i < 8; ++i) buf[19 + i] = static_cast<unsigned char>(u >> (8 * i));
  std::mt19937_64 rng(fnv1a64(buf, sizeof buf));
  const double x = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
  return (2.0 * x - 1.0) * amplitude_deg;
}

Scenario build_scenario(const Parsed& pc, const std::string& base_dir) {
  Scenario sc;
  sc.name = pc.name;
  sc.clock = pc.clock;
  sc.params = pc.params;
  sc.params_group = pc.group;
  sc.horizon_states = pc.horizon_s / pc.clock.fsa_state_s;
  sc.algorithm = pc.algorithm;
  sc.seed = pc.seed;
  sc.visibility = pc.vis;
  sc.refresh_last_contact_on_repeat = pc.refresh_last_contact_on_repeat;
  sc.ephemeris = EphemerisModel(pc.frame);

  Roster& r = sc.roster;
  char nb[32];

  const PointingSpec meo_pt{pc.pointing.meo_half_cone_deg, Boresight::EarthCenter};
  const PointingSpec hi_pt{pc.pointing.geo_igso_half_cone_deg, Boresight::EarthCenter};
  const PointingSpec lp_pt{pc.pointing.lp_half_cone_deg, Boresight::EarthCenter};
  const PointingSpec user_pt{pc.pointing.user_half_cone_deg, Boresight::EarthCenter};
  const PointingSpec gs_pt{pc.pointing.gs_half_cone_deg, Boresight::Zenith};

  const std::int64_t per_plane = pc.walker.count / pc.walker.planes;
  const double a_meo = kEarthRadiusKm + pc.walker.altitude_km;
  for (std::int64_t p = 0; p < pc.walker.planes; ++p) {
    for (std::int64_t s = 0; s < per_plane; ++s) {
      std::snprintf(nb, sizeof nb, "MEO%02lld", static_cast<long long>(p * per_plane + s + 1));
      NodeId id = r.add({nb, NodeClass::GnssSatellite, meo_pt});
      const double raan = 360.0 / static_cast<double>(pc.walker.planes) * static_cast<double>(p);
      const double u0 =
          360.0 / static_cast<double>(per_plane) * static_cast<double>(s) +
          360.0 * static_cast<double>(pc.walker.phasing) / static_cast<double>(pc.walker.count) *
              static_cast<double>(p);
      sc.ephemeris.set_source(
          id, KeplerElements::circular(a_meo, pc.walker.inclination_deg, raan, u0));
    }
  }

  const double a_high = kEarthRadiusKm + pc.geo_igso_altitude_km;
  for (const auto& s : pc.igso) {
    NodeId id = r.add({s.name, NodeClass::GnssSatellite, hi_pt});
    KeplerElements el{a_high, s.inclination_deg, s.lon_deg + pc.frame.greenwich_epoch_deg,
                      s.phase_deg, pc.frame.earth_rotation_period_s};
    sc.ephemeris.set_source(id, el);
  }
  for (const auto& s : pc.geo) {
    NodeId id = r.add({s.name, NodeClass::GnssSatellite, hi_pt});
    KeplerElements el{a_high, 0.0, 0.0, s.lon_deg + pc.frame.greenwich_epoch_deg,
                      pc.frame.earth_rotation_period_s};
    sc.ephemeris.set_source(id, el);
  }

  for (const auto& s : pc.lp) {
    NodeId id = r.add({s.name, NodeClass::LpSatellite, lp_pt});
    sc.ephemeris.set_source(id, s.placement);
  }

  for (std::int64_t u = 0; u < pc.users.count; ++u) {
    std::snprintf(nb, sizeof nb, "U%03lld", static_cast<long long>(u + 1));
    NodeId id = r.add({nb, NodeClass::User, user_pt});
    const std::string& where = pc.users.placement[static_cast<std::size_t>(u) %
                                                  pc.users.placement.size()];
    LpPlacement placement;
    for (const auto& s : pc.lp)
      if (s.name == where) placement = s.placement;
    placement.phase_offset_deg += jitter_draw(pc.seed, u, pc.users.jitter_deg);
    sc.ephemeris.set_source(id, placement);
    sc.demands.push_back({id, pc.users.links_per_state});
  }

  for (const auto& s : pc.stations) {
    NodeId id = r.add({s.name, NodeClass::GroundStation, gs_pt});
    sc.ephemeris.set_source(id, s.geo);
  }

  for (const auto& [node, path] : pc.eph_overrides) {
    NodeId id = r.require(node);
    sc.ephemeris.set_source(id, EphemerisTable::from_csv(resolve_path(base_dir, path)));
  }

  validate_scenario(sc);
  return sc;
}

json emit_canonical(const Parsed& pc) {
  json d;
  d["name"] = pc.name;
  d["algorithm"] = to_string(pc.algorithm);
  d["seed"] = pc.seed;
  d["group"] = pc.group;
  d["params"] = pc.param_overrides;
  d["clock"] = {{"short_slot_s", pc.clock.short_slot_s},
                {"long_slot_s", pc.clock.long_slot_s},
                {"fsa_state_s", pc.clock.fsa_state_s}};
  d["horizon_s"] = pc.horizon_s;

  json walker = {{"count", pc.walker.count},
                 {"planes", pc.walker.planes},
                 {"phasing", pc.walker.phasing},
                 {"altitude_km", pc.walker.altitude_km},
                 {"inclination_deg", pc.walker.inclination_deg}};
  json igso = json::array();
  for (const auto& s : pc.igso)
    igso.push_back({{"name", s.name},
                    {"lon_deg", s.lon_deg},
                    {"phase_deg", s.phase_deg},
                    {"inclination_deg", s.inclination_deg}});
  json geo = json::array();
  for (const auto& s : pc.geo) geo.push_back({{"name", s.name}, {"lon_deg", s.lon_deg}});
  json lp = json::array();
  for (const auto& s : pc.lp)
    lp.push_back({{"name", s.name},
                  {"point", lp_point_name(s.point)},
                  {"phase_offset_deg", s.placement.phase_offset_deg},
                  {"dro_radius_km", s.placement.dro_radius_km},
                  {"dro_period_s", s.placement.dro_period_s},
                  {"l3_radius_factor", s.placement.l3_radius_factor}});
  d["constellation"] = {{"walker", walker},
                        {"igso", igso},
                        {"geo", geo},
                        {"geo_igso_altitude_km", pc.geo_igso_altitude_km},
                        {"lp", lp}};

  json gs = json::array();
  for (const auto& s : pc.stations)
    gs.push_back({{"name", s.name}, {"lat_deg", s.geo.lat_deg}, {"lon_deg", s.geo.lon_deg}});
  d["ground_stations"] = gs;

  d["users"] = {{"count", pc.users.count},
                {"links_per_state", pc.users.links_per_state},
                {"jitter_deg", pc.users.jitter_deg},
                {"placement", pc.users.placement}};
  d["pointing"] = {{"meo_half_cone_deg", pc.pointing.meo_half_cone_deg},
                   {"geo_igso_half_cone_deg", pc.pointing.geo_igso_half_cone_deg},
                   {"lp_half_cone_deg", pc.pointing.lp_half_cone_deg},
                   {"gs_half_cone_deg", pc.pointing.gs_half_cone_deg},
                   {"user_half_cone_deg", pc.pointing.user_half_cone_deg}};
  d["visibility"] = {{"sample_step_s", pc.vis.sample_step_s},
                     {"occlusion_margin_km", pc.vis.occlusion_margin_km}};
  d["frame"] = {{"earth_moon_dist_km", pc.frame.earth_moon_dist_km},
                {"moon_period_s", pc.frame.moon_period_s},
                {"moon_phase_epoch_deg", pc.frame.moon_phase_epoch_deg},
                {"mass_ratio", pc.frame.mass_ratio},
                {"greenwich_epoch_deg", pc.frame.greenwich_epoch_deg},
                {"earth_rotation_period_s", pc.frame.earth_rotation_period_s}};
  d["scheduler"] = {{"refresh_last_contact_on_repeat", pc.refresh_last_contact_on_repeat}};
  json eo = json::object();
  for (const auto& [node, path] : pc.eph_overrides) eo[node] = path;
  d["ephemeris_overrides"] = eo;
  if (pc.topo)
    d["topology_override"] = {{"links_csv", pc.topo->links_csv},
                              {"anchors_csv", pc.topo->anchors_csv}};
  else
    d["topology_override"] = nullptr;
  d["output"] = {{"directory", pc.output.directory},
                 {"write_plan", pc.output.write_plan},
                 {"export_topology", pc.output.export_topology}};
  return d;
}

json parse_doc(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config: not valid JSON");
  return doc;
}

std::string join_errors(const Errors& errs) {
  std::string out = "invalid config:";
  for (const auto& e : errs) out += "\n  - " + e;
  return out;
}

Parsed parse_or_throw(const std::string& text) {
  Errors errs;
  Parsed pc = parse_all(parse_doc(text), errs);
  if (!errs.empty()) throw ConfigError(join_errors(errs));
  return pc;
}

}  // namespace

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  fs::path parent = fs::path(path).parent_path();
  return from_json_text(ss.str(), parent.empty() ? std::string(".") : parent.string());
}

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text,
                                              const std::string& base_dir) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config: not valid JSON");
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  ScenarioConfig cfg;
  cfg.text_ = doc.dump();
  cfg.base_dir_ = base_dir;
  return cfg;
}

void ScenarioConfig::apply_override(const std::string& assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like path.to.key=value: " + assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string value_text = assignment.substr(eq + 1);

  json value = json::parse(value_text, nullptr, false);
  if (value.is_discarded()) value = value_text;  // bare strings stay strings

  json doc = parse_doc(text_);
  json* cur = &doc;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw ConfigError("override has an empty path segment: " + assignment);
    if (dot == std::string::npos) {
      (*cur)[key] = value;
      break;
    }
    json& next = (*cur)[key];
    if (next.is_null()) next = json::object();
    if (!next.is_object())
      throw ConfigError("override path crosses a non-object value at '" + key +
                        "': " + assignment);
    cur = &next;
    start = dot + 1;
  }
  text_ = doc.dump();
}

std::vector<std::string> ScenarioConfig::validate() const {
  Errors errs;
  json doc;
  try {
    doc = parse_doc(text_);
  } catch (const ConfigError& e) {
    errs.push_back(e.what());
    return errs;
  }
  Parsed pc = parse_all(doc, errs);
  if (errs.empty()) {
    try {
      build_scenario(pc, base_dir_);
    } catch (const std::exception& e) {
      errs.push_back(e.what());
    }
  }
  return errs;
}

Scenario ScenarioConfig::build() const {
  return build_scenario(parse_or_throw(text_), base_dir_);
}

std::string ScenarioConfig::canonical_text() const {
  return emit_canonical(parse_or_throw(text_)).dump();
}

std::uint64_t ScenarioConfig::scenario_hash() const {
  json c = emit_canonical(parse_or_throw(text_));
  c.erase("output");
  const std::string s = c.dump();
  return fnv1a64(s.data(), s.size());
}

std::string ScenarioConfig::scenario_id() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(scenario_hash()));
  return buf;
}

ScenarioConfig::OutputOptions ScenarioConfig::output_options() const {
  return parse_or_throw(text_).output;
}

std::optional<ScenarioConfig::TopologyOverride> ScenarioConfig::topology_override() const {
  Parsed pc = parse_or_throw(text_);
  if (!pc.topo) return std::nullopt;
  TopologyOverride t;
  t.links_csv = resolve_path(base_dir_, pc.topo->links_csv);
  t.anchors_csv = resolve_path(base_dir_, pc.topo->anchors_csv);
  return t;
}

std::string ScenarioConfig::group() const { return parse_or_throw(text_).group; }

std::string ScenarioConfig::name() const { return parse_or_throw(text_).name; }

}  // namespace jcpd
