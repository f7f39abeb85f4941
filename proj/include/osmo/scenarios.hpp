#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "osmo/geometry.hpp"
#include "osmo/sensor_sim.hpp"

namespace osmo::sim {

struct FingerWaveParams {
  double duration_s = 60.0;
  double rate_hz = kStreamRateHz;
  double amplitude_m = 0.015;
  double freq_hz = 0.5;
  // Earth-field variation from hand motion, modeled as a slowly wandering
  // ambient vector whose magnitude oscillates in [ambient_var_min, max].
  double ambient_var_min_ut = 20.0;
  double ambient_var_max_ut = 60.0;
};

struct PressParams {
  int presses = 10;
  double peak_force_n = 1.0;
  double rate_hz = kStreamRateHz;
  double rise_s = 0.2;
  double hold_s = 0.4;
  double fall_s = 0.2;
  double rest_s = 0.4;
};

// Finger-wave kinematics: fingertip taxels translate rigidly (patch and
// both magnetometers together) along per-finger sinusoids with sequential
// phase offsets. Palm taxels stay put. Exposes the posed taxel array per
// time so analyses can evaluate selected magnetometers cheaply.
class FingerWaveScenario {
 public:
  FingerWaveScenario(const GloveGeometry& geo, const FingerWaveParams& p,
                     std::uint64_t seed)
      : geo_(geo), p_(p) {
    Rng rng(seed);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (auto& ph : finger_phase_) ph = phase(rng);
    // Random initial position within the wave: common phase offset.
    const double trial_phase = phase(rng);
    for (int f = 0; f < kNumFingertips; ++f)
      finger_phase_[f] =
          trial_phase + f * (2.0 * std::numbers::pi / kNumFingertips);
    amb_phase_mag_ = phase(rng);
    amb_phase_theta_ = phase(rng);
    amb_phase_psi_ = phase(rng);
  }

  Vec3 finger_offset(int finger, double t) const {
    static const Vec3 dir = Vec3(0.0, -0.8, 0.6).normalized();
    const double w = 2.0 * std::numbers::pi * p_.freq_hz;
    return p_.amplitude_m * std::sin(w * t + finger_phase_[finger]) * dir;
  }

  std::vector<TaxelState> taxels_at(double t) const {
    std::vector<TaxelState> out = geo_.taxels;
    for (int f = 0; f < kNumFingertips; ++f) {
      const Vec3 d = finger_offset(f, t);
      out[f].dipole.position += d;
      out[f].rest_dipole_position += d;
      out[f].magnetometers[0].position += d;
      out[f].magnetometers[1].position += d;
    }
    return out;
  }

  Vec3 ambient_at(double t) const {
    const double span = p_.ambient_var_max_ut - p_.ambient_var_min_ut;
    if (p_.ambient_var_max_ut <= 0.0) return geo_.ambient_base;
    const double mag = p_.ambient_var_min_ut + 0.5 * span *
        (1.0 + std::sin(2.0 * std::numbers::pi * 0.21 * t + amb_phase_mag_));
    const double th =
        0.9 * std::sin(2.0 * std::numbers::pi * 0.13 * t + amb_phase_theta_);
    const double ps =
        2.0 * std::sin(2.0 * std::numbers::pi * 0.07 * t + amb_phase_psi_);
    const Vec3 u(std::cos(th) * std::cos(ps), std::cos(th) * std::sin(ps),
                 std::sin(th));
    return geo_.ambient_base + mag * u;
  }

  const FingerWaveParams& params() const { return p_; }
  const GloveGeometry& geometry() const { return geo_; }

 private:
  GloveGeometry geo_;
  FingerWaveParams p_;
  std::array<double, kNumFingertips> finger_phase_{};
  double amb_phase_mag_ = 0.0, amb_phase_theta_ = 0.0, amb_phase_psi_ = 0.0;
};

namespace detail {

// Accelerometer channels by central finite difference of the motion, plus
// gravity along +z; gyro stays zero (pure translation).
inline void fill_imu(GloveFrame& f, const FingerWaveScenario& sc, double t,
                     double dt) {
  for (int tx = 0; tx < kNumTaxels; ++tx) {
    f.imu[tx].setZero();
    f.imu[tx][2] = 9.81;
  }
  for (int finger = 0; finger < kNumFingertips; ++finger) {
    const Vec3 a = (sc.finger_offset(finger, t + dt) -
                    2.0 * sc.finger_offset(finger, t) +
                    sc.finger_offset(finger, t - dt)) /
                   (dt * dt);
    f.imu[finger].head<3>() += a;
  }
}

}  // namespace detail

inline std::vector<GloveFrame> simulate_finger_wave(const GloveGeometry& geo,
                                                    const FingerWaveParams& p,
                                                    std::uint64_t seed) {
  if (p.duration_s <= 0.0) throw ConfigError("duration must be positive");
  FingerWaveScenario sc(geo, p, seed);
  Rng noise_rng(seed ^ 0x9e3779b97f4a7c15ull);
  const int n = static_cast<int>(std::llround(p.duration_s * p.rate_hz));
  const double dt = 1.0 / p.rate_hz;
  std::vector<GloveFrame> frames;
  frames.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double t = i * dt;
    const auto taxels = sc.taxels_at(t);
    GloveFrame f = read_glove(taxels, sc.ambient_at(t), noise_rng,
                              static_cast<std::uint64_t>(i * 1e6 / p.rate_hz));
    detail::fill_imu(f, sc, t, dt);
    frames.push_back(std::move(f));
  }
  return frames;
}

// Trapezoidal load profile on the index-distal patch; all other taxels
// stay unloaded. Quasi-static: no ambient modulation.
inline double press_force_at(const PressParams& p, double t) {
  const double cycle = p.rise_s + p.hold_s + p.fall_s + p.rest_s;
  if (t < 0.0 || t >= p.presses * cycle) return 0.0;
  const double u = std::fmod(t, cycle);
  if (u < p.rise_s) return p.peak_force_n * (u / p.rise_s);
  if (u < p.rise_s + p.hold_s) return p.peak_force_n;
  if (u < p.rise_s + p.hold_s + p.fall_s)
    return p.peak_force_n * (1.0 - (u - p.rise_s - p.hold_s) / p.fall_s);
  return 0.0;
}

inline std::vector<GloveFrame> simulate_press_sequence(const GloveGeometry& geo,
                                                       const PressParams& p,
                                                       std::uint64_t seed) {
  if (p.presses < 1) throw ConfigError("presses must be >= 1");
  Rng noise_rng(seed ^ 0x9e3779b97f4a7c15ull);
  const double cycle = p.rise_s + p.hold_s + p.fall_s + p.rest_s;
  const double duration = p.presses * cycle + p.rest_s;
  const int n = static_cast<int>(std::llround(duration * p.rate_hz));
  const int index = geo.index_of("index_distal");
  std::vector<GloveFrame> frames;
  frames.reserve(n);
  std::vector<TaxelState> taxels = geo.taxels;
  for (int i = 0; i < n; ++i) {
    const double t = i / p.rate_hz;
    const Vec3 force(0.0, 0.0, press_force_at(p, t));
    taxels[index] = apply_force(geo.taxels[index], force);
    GloveFrame f = read_glove(taxels, geo.ambient_base, noise_rng,
                              static_cast<std::uint64_t>(i * 1e6 / p.rate_hz));
    for (int tx = 0; tx < kNumTaxels; ++tx) f.imu[tx][2] = 9.81;
    frames.push_back(std::move(f));
  }
  return frames;
}

}  // namespace osmo::sim
