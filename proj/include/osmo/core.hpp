#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace osmo {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Iso3 = Eigen::Isometry3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

inline constexpr int kNumTaxels = 12;
inline constexpr int kMagsPerTaxel = 2;
inline constexpr int kNumFingertips = 5;
inline constexpr double kStreamRateHz = 25.0;
inline constexpr std::uint64_t kFramePeriodUs = 40000;

// Exceptions ------------------------------------------------------------

struct SingularityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutOfRangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TooShortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadWindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyCloudError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateNeighborhoodError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FrameMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyStreamError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LimitViolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InitializationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateChannelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyTrajectoryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LengthMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// FNV-1a 64-bit, used for content addressing and manifest checksums.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf);
}

}  // namespace osmo
