#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "osmo/scenarios.hpp"
#include "osmo/sensor_sim.hpp"

namespace osmo::analysis {

using sim::GloveFrame;

struct RmsReport {
  Vec3 per_axis = Vec3::Zero();  // uT
  double average = 0.0;          // mean of the three axes
  int taxel_id = -1;
  std::string config_label;
};

// Per-axis RMS deviation about the series mean.
inline RmsReport rms_noise(std::span<const Vec3> series) {
  if (series.size() < 2)
    throw TooShortError("rms_noise needs at least 2 samples");
  Vec3 mean = Vec3::Zero();
  for (const auto& v : series) mean += v;
  mean /= static_cast<double>(series.size());
  Vec3 acc = Vec3::Zero();
  for (const auto& v : series) {
    const Vec3 d = v - mean;
    acc += d.cwiseProduct(d);
  }
  RmsReport r;
  r.per_axis = (acc / static_cast<double>(series.size())).cwiseSqrt();
  r.average = r.per_axis.mean();
  return r;
}

struct DifferentialFrame {
  std::uint64_t timestamp_us = 0;
  std::array<Vec3, kNumTaxels> diff{};  // mag0 - mag1, uT
};

inline DifferentialFrame differential(const GloveFrame& frame) {
  DifferentialFrame d;
  d.timestamp_us = frame.timestamp_us;
  for (int t = 0; t < kNumTaxels; ++t)
    d.diff[t] = frame.readings[t][0] - frame.readings[t][1];
  return d;
}

// One Table-I-style sensor configuration.
struct SensorConfig {
  bool shielded = false;
  int num_mags = 2;  // 1 or 2
  std::string label;
};

inline std::vector<SensorConfig> table_configs() {
  return {{false, 1, "Unshielded + 1 mag"},
          {false, 2, "Unshielded + 2 mags"},
          {true, 2, "Shielded + 2 mags"}};
}

struct CrosstalkScenarioSpec {
  sim::FingerWaveParams wave;
  int trials = 5;
  std::vector<int> monitored;  // taxel ids; empty -> thumb + middle distal
  std::uint64_t seed = 0;
};

// Runs the finger-wave experiment once per trial and scores every config on
// the same kinematics and the same noise draws. Only the monitored
// magnetometers are evaluated, which keeps the 5x60s protocol cheap.
inline std::vector<RmsReport> compare_configurations(
    const sim::GloveGeometry& geo, const CrosstalkScenarioSpec& spec,
    std::span<const SensorConfig> configs) {
  std::vector<int> monitored = spec.monitored;
  if (monitored.empty())
    monitored = {geo.index_of("thumb_distal"), geo.index_of("middle_distal")};
  if (monitored.size() > 8)
    throw ConfigError("at most 8 monitored taxels supported");

  // accumulated per (config, monitored taxel): sum of per-trial reports
  std::vector<std::vector<RmsReport>> acc(
      configs.size(), std::vector<RmsReport>(monitored.size()));

  const int n = static_cast<int>(
      std::llround(spec.wave.duration_s * spec.wave.rate_hz));
  const double dt = 1.0 / spec.wave.rate_hz;

  for (int trial = 0; trial < spec.trials; ++trial) {
    const std::uint64_t trial_seed = spec.seed + 0x51ed2701ull * (trial + 1);
    sim::FingerWaveScenario sc(geo, spec.wave, trial_seed);
    sim::Rng noise_rng(trial_seed ^ 0x9e3779b97f4a7c15ull);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // raw[frame][taxel][mag]: unshielded sensor-frame field; noise drawn
    // once and shared by every config.
    std::vector<std::array<std::array<Vec3, 2>, 8>> raw(n);
    std::vector<std::array<std::array<Vec3, 2>, 8>> noise(n);
    for (int i = 0; i < n; ++i) {
      const double t = i * dt;
      const auto taxels = sc.taxels_at(t);
      const Vec3 ambient = sc.ambient_at(t);
      for (std::size_t k = 0; k < monitored.size(); ++k) {
        const sim::TaxelState& tx = taxels[monitored[k]];
        for (int m = 0; m < 2; ++m) {
          const auto& mag = tx.magnetometers[m];
          raw[i][k][m] =
              mag.rotation.transpose() *
              (sim::field_at(mag.position, taxels) + ambient);
          noise[i][k][m] =
              Vec3(gauss(noise_rng), gauss(noise_rng), gauss(noise_rng)) *
              mag.noise_floor_sigma;
        }
      }
    }

    for (std::size_t c = 0; c < configs.size(); ++c) {
      sim::ShieldDesc shield = geo.taxels.front().shield;
      shield.enabled = configs[c].shielded;
      for (std::size_t k = 0; k < monitored.size(); ++k) {
        std::vector<Vec3> series(n);
        for (int i = 0; i < n; ++i) {
          const Vec3 r0 = sim::apply_shield(shield, raw[i][k][0]) + noise[i][k][0];
          if (configs[c].num_mags == 1) {
            series[i] = r0;
          } else {
            const Vec3 r1 =
                sim::apply_shield(shield, raw[i][k][1]) + noise[i][k][1];
            series[i] = r0 - r1;
          }
        }
        const RmsReport r = rms_noise(series);
        acc[c][k].per_axis += r.per_axis;
        acc[c][k].average += r.average;
      }
    }
  }

  std::vector<RmsReport> out;
  for (std::size_t c = 0; c < configs.size(); ++c)
    for (std::size_t k = 0; k < monitored.size(); ++k) {
      RmsReport r = acc[c][k];
      r.per_axis /= spec.trials;
      r.average /= spec.trials;
      r.taxel_id = monitored[k];
      r.config_label = configs[c].label;
      out.push_back(r);
    }
  return out;
}

// Aligned text table mirroring the three-config crosstalk report layout.
inline std::string format_table(const std::vector<RmsReport>& reports,
                                const sim::GloveGeometry& geo,
                                const std::string& title) {
  std::ostringstream os;
  os << title << " - RMS Noise (uT)\n";
  // group by taxel, preserving first-seen order
  std::vector<int> taxels;
  for (const auto& r : reports)
    if (std::find(taxels.begin(), taxels.end(), r.taxel_id) == taxels.end())
      taxels.push_back(r.taxel_id);
  char line[160];
  for (int tid : taxels) {
    std::snprintf(line, sizeof(line), "%-24s %10s %10s %10s %10s\n",
                  geo.names[tid].c_str(), "X-Axis", "Y-Axis", "Z-Axis", "Avg");
    os << line;
    for (const auto& r : reports) {
      if (r.taxel_id != tid) continue;
      std::snprintf(line, sizeof(line), "%-24s %10.2f %10.2f %10.2f %10.2f\n",
                    r.config_label.c_str(), r.per_axis.x(), r.per_axis.y(),
                    r.per_axis.z(), r.average);
      os << line;
    }
  }
  return os.str();
}

inline std::string format_csv(const std::vector<RmsReport>& reports,
                              const sim::GloveGeometry& geo) {
  std::ostringstream os;
  os << "taxel,config,rms_x_ut,rms_y_ut,rms_z_ut,rms_avg_ut\n";
  for (const auto& r : reports) {
    char line[200];
    std::snprintf(line, sizeof(line), "%s,%s,%.6g,%.6g,%.6g,%.6g\n",
                  geo.names[r.taxel_id].c_str(), r.config_label.c_str(),
                  r.per_axis.x(), r.per_axis.y(), r.per_axis.z(), r.average);
    os << line;
  }
  return os.str();
}

}  // namespace osmo::analysis
