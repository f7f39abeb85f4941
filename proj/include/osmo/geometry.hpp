#pragma once

#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "osmo/core.hpp"
#include "osmo/sensor_sim.hpp"

namespace osmo::sim {

// Glove geometry: taxel placement in a flat-hand reference pose.
// Frame convention: x across the palm (thumb -> pinky), y toward the
// fingertips, z out of the palm. Units are SI (meters, A*m^2, N/m, uT).
struct GloveGeometry {
  std::vector<TaxelState> taxels;           // size 12, id == index
  std::vector<std::string> names;           // parallel to taxels
  Vec3 ambient_base{20.0, 0.0, 45.0};       // static Earth field, uT

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return static_cast<int>(i);
    throw ConfigError("unknown taxel name: " + name);
  }
};

namespace detail {

inline Vec3 to_vec3(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("expected 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

inline TaxelState make_taxel(int id, const Vec3& pos, double moment_z,
                             const Vec3& mag0_off, const Vec3& mag1_off,
                             double stiffness, double noise_sigma,
                             const ShieldDesc& shield) {
  TaxelState t;
  t.id = id;
  t.dipole.position = pos;
  t.dipole.moment = Vec3(0.0, 0.0, moment_z);
  t.rest_dipole_position = pos;
  t.magnetometers[0] = {pos + mag0_off, Mat3::Identity(), noise_sigma};
  t.magnetometers[1] = {pos + mag1_off, Mat3::Identity(), noise_sigma};
  t.shield = shield;
  t.stiffness = stiffness;
  return t;
}

}  // namespace detail

// Built-in layout matching configs/glove_geometry.json. Taxels 0..4 are the
// fingertips (thumb, index, middle, ring, pinky distal), 5..11 the palm.
inline GloveGeometry default_geometry() {
  GloveGeometry g;
  const double moment_z = 1.6e-3;       // A*m^2, axial magnetization
  const Vec3 mag0_off(0.0, 0.0, 0.004);  // 4 mm standoff above the patch
  const Vec3 mag1_off(0.003, 0.0, 0.004);
  const double stiffness = 12500.0;     // N/m, tuned for ~300 uT at 1 N
  const double noise_sigma = 3.0;       // uT per axis
  const ShieldDesc shield{false, 0.25, 1.5};

  const std::vector<std::pair<std::string, Vec3>> layout = {
      {"thumb_distal", {-0.050, 0.020, 0.0}},
      {"index_distal", {-0.015, 0.095, 0.0}},
      {"middle_distal", {0.005, 0.100, 0.0}},
      {"ring_distal", {0.025, 0.095, 0.0}},
      {"pinky_distal", {0.045, 0.085, 0.0}},
      {"palm_thenar", {-0.030, 0.010, 0.0}},
      {"palm_center_low", {0.000, 0.005, 0.0}},
      {"palm_hypothenar", {0.032, 0.005, 0.0}},
      {"palm_index_base", {-0.012, 0.055, 0.0}},
      {"palm_middle_base", {0.006, 0.058, 0.0}},
      {"palm_ring_base", {0.024, 0.055, 0.0}},
      {"palm_pinky_base", {0.042, 0.048, 0.0}},
  };
  int id = 0;
  for (const auto& [name, pos] : layout) {
    g.taxels.push_back(detail::make_taxel(id++, pos, moment_z, mag0_off,
                                          mag1_off, stiffness, noise_sigma,
                                          shield));
    g.names.push_back(name);
  }
  return g;
}

inline GloveGeometry load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open geometry file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("geometry parse error in " + path + ": " + e.what());
  }

  GloveGeometry g;
  const auto& d = j.at("defaults");
  const double moment_z = d.at("moment_z_am2").get<double>();
  const Vec3 mag0_off = detail::to_vec3(d.at("mag0_offset_m"));
  const Vec3 mag1_off = detail::to_vec3(d.at("mag1_offset_m"));
  const double stiffness = d.at("stiffness_n_per_m").get<double>();
  const double noise_sigma = d.at("noise_floor_sigma_ut").get<double>();
  ShieldDesc shield;
  shield.enabled = d.at("shield").value("enabled", false);
  shield.inplane_attenuation = d.at("shield").at("inplane_attenuation").get<double>();
  shield.z_concentration = d.at("shield").at("z_concentration").get<double>();
  if (shield.inplane_attenuation < 0.0 || shield.inplane_attenuation > 1.0)
    throw ConfigError("inplane_attenuation must be in [0,1]");
  if (shield.z_concentration < 1.0)
    throw ConfigError("z_concentration must be >= 1");
  if (j.contains("ambient_base_ut"))
    g.ambient_base = detail::to_vec3(j.at("ambient_base_ut"));

  int id = 0;
  for (const auto& jt : j.at("taxels")) {
    const Vec3 pos = detail::to_vec3(jt.at("position_m"));
    TaxelState t = detail::make_taxel(
        id, pos, jt.value("moment_z_am2", moment_z), mag0_off, mag1_off,
        jt.value("stiffness_n_per_m", stiffness),
        jt.value("noise_floor_sigma_ut", noise_sigma), shield);
    g.taxels.push_back(t);
    g.names.push_back(jt.at("name").get<std::string>());
    ++id;
  }
  if (g.taxels.size() != kNumTaxels)
    throw ConfigError("geometry must define exactly 12 taxels");
  return g;
}

inline nlohmann::json geometry_to_json(const GloveGeometry& g) {
  nlohmann::json j;
  const TaxelState& t0 = g.taxels.front();
  j["defaults"] = {
      {"moment_z_am2", t0.dipole.moment.z()},
      {"mag0_offset_m",
       {t0.magnetometers[0].position.x() - t0.rest_dipole_position.x(),
        t0.magnetometers[0].position.y() - t0.rest_dipole_position.y(),
        t0.magnetometers[0].position.z() - t0.rest_dipole_position.z()}},
      {"mag1_offset_m",
       {t0.magnetometers[1].position.x() - t0.rest_dipole_position.x(),
        t0.magnetometers[1].position.y() - t0.rest_dipole_position.y(),
        t0.magnetometers[1].position.z() - t0.rest_dipole_position.z()}},
      {"stiffness_n_per_m", t0.stiffness},
      {"noise_floor_sigma_ut", t0.magnetometers[0].noise_floor_sigma},
      {"shield",
       {{"enabled", t0.shield.enabled},
        {"inplane_attenuation", t0.shield.inplane_attenuation},
        {"z_concentration", t0.shield.z_concentration}}}};
  j["ambient_base_ut"] = {g.ambient_base.x(), g.ambient_base.y(),
                          g.ambient_base.z()};
  j["taxels"] = nlohmann::json::array();
  for (std::size_t i = 0; i < g.taxels.size(); ++i) {
    const auto& p = g.taxels[i].rest_dipole_position;
    j["taxels"].push_back(
        {{"name", g.names[i]}, {"position_m", {p.x(), p.y(), p.z()}}});
  }
  return j;
}

}  // namespace osmo::sim
