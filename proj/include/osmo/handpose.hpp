#pragma once

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "osmo/core.hpp"
#include "osmo/savgol.hpp"

namespace osmo::handpose {

inline constexpr int kNumKeypoints = 21;
// Wrist + fingertip indices in the 21-keypoint hand convention.
inline constexpr int kWristKeypoint = 0;
inline constexpr std::array<int, 5> kFingertipKeypoints = {4, 8, 12, 16, 20};

enum class FrameId { Camera, Robot };

struct HandPoseFrame {
  std::uint64_t timestamp_us = 0;
  std::array<Vec3, kNumKeypoints> keypoints{};  // m
  Iso3 wrist_pose = Iso3::Identity();
  double confidence = 1.0;
  FrameId frame_id = FrameId::Camera;
};

struct PointCloud {
  std::vector<Vec3> points;
  FrameId frame_id = FrameId::Camera;
};

struct Extrinsics {
  Iso3 camera_to_robot = Iso3::Identity();
};

inline PointCloud to_robot_frame(const PointCloud& cloud,
                                 const Extrinsics& ext) {
  if (cloud.frame_id == FrameId::Robot)
    throw FrameMismatchError("point cloud already in robot frame");
  PointCloud out;
  out.frame_id = FrameId::Robot;
  out.points.reserve(cloud.points.size());
  for (const auto& p : cloud.points) out.points.push_back(ext.camera_to_robot * p);
  return out;
}

inline HandPoseFrame to_robot_frame(const HandPoseFrame& pose,
                                    const Extrinsics& ext) {
  if (pose.frame_id == FrameId::Robot)
    throw FrameMismatchError("pose already in robot frame");
  HandPoseFrame out = pose;
  out.frame_id = FrameId::Robot;
  for (auto& kp : out.keypoints) kp = ext.camera_to_robot * kp;
  out.wrist_pose = ext.camera_to_robot * pose.wrist_pose;
  return out;
}

struct RefineParams {
  int k = 50;
  double radius_m = 0.05;  // planar sanity gate
};

// Depth refinement against a stereo hand cloud: take the k planar-nearest
// cloud points to the wrist keypoint and shift the whole pose rigidly along
// the depth axis (z) to their median depth. Planar coordinates and rotation
// are untouched.
inline HandPoseFrame refine_wrist_depth(const HandPoseFrame& pose,
                                        const PointCloud& cloud,
                                        const RefineParams& params = {}) {
  if (cloud.points.empty()) throw EmptyCloudError("empty hand point cloud");
  if (pose.frame_id != cloud.frame_id)
    throw FrameMismatchError("pose and cloud frames differ");
  const Vec3 wrist = pose.keypoints[kWristKeypoint];

  const int k =
      std::min<int>(params.k, static_cast<int>(cloud.points.size()));
  std::vector<std::pair<double, double>> by_dist;  // (planar dist, depth)
  by_dist.reserve(cloud.points.size());
  for (const auto& p : cloud.points)
    by_dist.emplace_back(std::hypot(p.x() - wrist.x(), p.y() - wrist.y()),
                         p.z());
  std::partial_sort(by_dist.begin(), by_dist.begin() + k, by_dist.end());

  int within = 0;
  for (int i = 0; i < k; ++i)
    if (by_dist[i].first <= params.radius_m) ++within;
  if (within < (k + 1) / 2)
    throw DegenerateNeighborhoodError(
        "fewer than k/2 neighbors within the planar radius gate");

  std::vector<double> depths(k);
  for (int i = 0; i < k; ++i) depths[i] = by_dist[i].second;
  std::nth_element(depths.begin(), depths.begin() + k / 2, depths.end());
  double median = depths[k / 2];
  if (k % 2 == 0) {
    const double lower =
        *std::max_element(depths.begin(), depths.begin() + k / 2);
    median = 0.5 * (median + lower);
  }

  const double offset = median - wrist.z();
  HandPoseFrame out = pose;
  for (auto& kp : out.keypoints) kp.z() += offset;
  out.wrist_pose.translation().z() += offset;
  return out;
}

// Hand trajectory in robot frame, ready for retargeting.
struct HandTrajectory {
  std::vector<std::uint64_t> timestamps_us;
  std::vector<Iso3> wrist;                       // per frame
  std::vector<std::array<Vec3, 5>> fingertips;   // per frame

  std::size_t size() const { return timestamps_us.size(); }
};

inline HandTrajectory to_trajectory(const std::vector<HandPoseFrame>& frames) {
  HandTrajectory t;
  for (const auto& f : frames) {
    t.timestamps_us.push_back(f.timestamp_us);
    t.wrist.push_back(f.wrist_pose);
    std::array<Vec3, 5> tips;
    for (int i = 0; i < 5; ++i) tips[i] = f.keypoints[kFingertipKeypoints[i]];
    t.fingertips.push_back(tips);
  }
  return t;
}

// Smooths wrist translation and fingertip positions channel-wise; wrist
// rotation is carried through unsmoothed.
inline HandTrajectory smooth(const HandTrajectory& traj, int window = 9,
                             int polyorder = 3) {
  SavitzkyGolay sg(window, polyorder);
  const int n = static_cast<int>(traj.size());
  if (n < window) throw TooShortError("trajectory shorter than SG window");
  HandTrajectory out = traj;
  std::vector<Vec3> ch(n);
  for (int i = 0; i < n; ++i) ch[i] = traj.wrist[i].translation();
  auto sm = sg.apply(ch);
  for (int i = 0; i < n; ++i) out.wrist[i].translation() = sm[i];
  for (int f = 0; f < 5; ++f) {
    for (int i = 0; i < n; ++i) ch[i] = traj.fingertips[i][f];
    sm = sg.apply(ch);
    for (int i = 0; i < n; ++i) out.fingertips[i][f] = sm[i];
  }
  return out;
}

// Keypoint file IO ------------------------------------------------------
// Text format, one block per frame (see docs/file_formats.md):
//   frame <timestamp_us> <confidence>
//   wrist <r00..r22 row-major> <tx ty tz>
//   kp <x> <y> <z>          (21 lines)
//   cloud <N>               (optional, N "pt x y z" lines)

inline void write_keypoints(const std::string& path,
                            const std::vector<HandPoseFrame>& frames,
                            const std::vector<PointCloud>* clouds = nullptr) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write keypoint file: " + path);
  out << "# osmo-keypoints 1\n";
  out.precision(12);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    out << "frame " << f.timestamp_us << " " << f.confidence << "\n";
    out << "wrist";
    const Mat3 r = f.wrist_pose.rotation();
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) out << " " << r(a, b);
    const Vec3 t = f.wrist_pose.translation();
    out << " " << t.x() << " " << t.y() << " " << t.z() << "\n";
    for (const auto& kp : f.keypoints)
      out << "kp " << kp.x() << " " << kp.y() << " " << kp.z() << "\n";
    if (clouds && i < clouds->size() && !(*clouds)[i].points.empty()) {
      out << "cloud " << (*clouds)[i].points.size() << "\n";
      for (const auto& p : (*clouds)[i].points)
        out << "pt " << p.x() << " " << p.y() << " " << p.z() << "\n";
    }
  }
}

struct KeypointFile {
  std::vector<HandPoseFrame> frames;
  std::vector<PointCloud> clouds;  // parallel to frames; may be empty clouds
};

inline KeypointFile read_keypoints(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open keypoint file: " + path);
  KeypointFile kf;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "frame") {
      HandPoseFrame f;
      ls >> f.timestamp_us >> f.confidence;
      if (!std::getline(in, line) || line.rfind("wrist", 0) != 0)
        throw ConfigError("keypoint file: expected wrist line");
      std::istringstream ws(line.substr(5));
      Mat3 r;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) ws >> r(a, b);
      Vec3 t;
      ws >> t.x() >> t.y() >> t.z();
      if (!ws) throw ConfigError("keypoint file: bad wrist line");
      f.wrist_pose.setIdentity();
      f.wrist_pose.linear() = r;
      f.wrist_pose.translation() = t;
      for (int i = 0; i < kNumKeypoints; ++i) {
        if (!std::getline(in, line) || line.rfind("kp", 0) != 0)
          throw ConfigError("keypoint file: expected 21 kp lines");
        std::istringstream ks(line.substr(2));
        ks >> f.keypoints[i].x() >> f.keypoints[i].y() >> f.keypoints[i].z();
        if (!ks) throw ConfigError("keypoint file: bad kp line");
      }
      kf.frames.push_back(f);
      kf.clouds.emplace_back();
    } else if (tag == "cloud") {
      if (kf.clouds.empty())
        throw ConfigError("keypoint file: cloud before any frame");
      std::size_t n = 0;
      ls >> n;
      PointCloud& c = kf.clouds.back();
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line) || line.rfind("pt", 0) != 0)
          throw ConfigError("keypoint file: truncated cloud block");
        std::istringstream ps(line.substr(2));
        Vec3 p;
        ps >> p.x() >> p.y() >> p.z();
        c.points.push_back(p);
      }
    } else {
      throw ConfigError("keypoint file: unknown record '" + tag + "'");
    }
  }
  return kf;
}

inline Extrinsics load_extrinsics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open extrinsics file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("extrinsics parse error in " + path + ": " + e.what());
  }
  Extrinsics e;
  Mat3 r;
  const auto& jr = j.at("rotation");
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) r(a, b) = jr.at(a).at(b).get<double>();
  if ((r.transpose() * r - Mat3::Identity()).norm() > 1e-6)
    throw ConfigError("extrinsics rotation is not orthonormal");
  e.camera_to_robot.setIdentity();
  e.camera_to_robot.linear() = r;
  const auto& jt = j.at("translation");
  e.camera_to_robot.translation() =
      Vec3(jt.at(0).get<double>(), jt.at(1).get<double>(), jt.at(2).get<double>());
  return e;
}

}  // namespace osmo::handpose
