#pragma once

#include <array>
#include <cmath>
#include <random>
#include <span>

#include "osmo/core.hpp"

namespace osmo::sim {

struct MagneticDipole {
  Vec3 position = Vec3::Zero();  // m, glove-local frame
  Vec3 moment = Vec3::Zero();    // A*m^2
};

struct MagnetometerDesc {
  Vec3 position = Vec3::Zero();
  Mat3 rotation = Mat3::Identity();  // sensor axes -> glove frame
  double noise_floor_sigma = 3.0;    // uT per axis
};

struct ShieldDesc {
  bool enabled = false;
  double inplane_attenuation = 0.25;  // [0,1]
  double z_concentration = 1.5;       // >= 1
};

struct TaxelState {
  int id = 0;
  MagneticDipole dipole;
  Vec3 rest_dipole_position = Vec3::Zero();
  std::array<MagnetometerDesc, 2> magnetometers;
  ShieldDesc shield;
  double stiffness = 12500.0;  // N/m
};

struct GloveFrame {
  std::uint64_t timestamp_us = 0;
  std::array<std::array<Vec3, kMagsPerTaxel>, kNumTaxels> readings;  // uT
  std::array<Vec6, kNumTaxels> imu;   // accel m/s^2 (0..2), gyro rad/s (3..5)
  Vec3 ambient_field = Vec3::Zero();  // uT, simulation metadata

  GloveFrame() {
    for (auto& taxel : readings)
      for (auto& r : taxel) r.setZero();
    for (auto& v : imu) v.setZero();
  }
};

inline constexpr double kDipoleGuardRadius = 1e-4;  // m
inline constexpr double kMaxForceN = 80.0;          // sensing ceiling

// Point-dipole field in uT. mu0/4pi = 1e-7 T*m/A; 1 T = 1e6 uT.
inline Vec3 dipole_field(const MagneticDipole& dipole, const Vec3& point) {
  const Vec3 r = point - dipole.position;
  const double rn = r.norm();
  if (rn < kDipoleGuardRadius)
    throw SingularityError("field point within dipole guard radius");
  const Vec3 rhat = r / rn;
  const Vec3 b_tesla =
      1e-7 * (3.0 * dipole.moment.dot(rhat) * rhat - dipole.moment) /
      (rn * rn * rn);
  return b_tesla * 1e6;
}

// Superposed field of many dipoles at one point.
inline Vec3 field_at(const Vec3& point, std::span<const TaxelState> taxels) {
  Vec3 b = Vec3::Zero();
  for (const auto& t : taxels) b += dipole_field(t.dipole, point);
  return b;
}

// Linear spring: the patch dipole displaces by force / stiffness from rest.
inline TaxelState apply_force(const TaxelState& taxel, const Vec3& force) {
  if (force.norm() > kMaxForceN)
    throw OutOfRangeError("force exceeds 80 N sensing ceiling");
  TaxelState out = taxel;
  out.dipole.position = taxel.rest_dipole_position + force / taxel.stiffness;
  return out;
}

inline Vec3 apply_shield(const ShieldDesc& s, const Vec3& b_sensor) {
  if (!s.enabled) return b_sensor;
  return Vec3(b_sensor.x() * s.inplane_attenuation,
              b_sensor.y() * s.inplane_attenuation,
              b_sensor.z() * s.z_concentration);
}

// One magnetometer reading: superposed dipole fields plus ambient, rotated
// into sensor axes, shield-transformed, no noise.
inline Vec3 clean_reading(const TaxelState& taxel, int mag,
                          std::span<const TaxelState> taxels,
                          const Vec3& ambient) {
  const MagnetometerDesc& m = taxel.magnetometers[mag];
  const Vec3 b = field_at(m.position, taxels) + ambient;
  return apply_shield(taxel.shield, m.rotation.transpose() * b);
}

using Rng = std::mt19937_64;

inline GloveFrame read_glove(std::span<const TaxelState> taxels,
                             const Vec3& ambient, Rng& rng,
                             std::uint64_t timestamp_us = 0) {
  GloveFrame f;
  f.timestamp_us = timestamp_us;
  f.ambient_field = ambient;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < kNumTaxels; ++t) {
    for (int m = 0; m < kMagsPerTaxel; ++m) {
      Vec3 r = clean_reading(taxels[t], m, taxels, ambient);
      const double sigma = taxels[t].magnetometers[m].noise_floor_sigma;
      if (sigma > 0.0)
        r += Vec3(gauss(rng), gauss(rng), gauss(rng)) * sigma;
      f.readings[t][m] = r;
    }
    f.imu[t].setZero();
  }
  return f;
}

inline GloveFrame read_glove(std::span<const TaxelState> taxels,
                             const Vec3& ambient, std::uint64_t seed,
                             std::uint64_t timestamp_us = 0) {
  Rng rng(seed);
  return read_glove(taxels, ambient, rng, timestamp_us);
}

}  // namespace osmo::sim
