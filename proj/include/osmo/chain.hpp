#pragma once

#include <Eigen/Geometry>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "osmo/core.hpp"

namespace osmo::retarget {

inline constexpr int kNumJoints = 13;  // 7-DoF arm + 6-DoF hand

struct Joint {
  std::string name;
  int parent = -1;               // joint index, -1 = base
  Iso3 origin = Iso3::Identity();  // fixed transform from parent frame
  Vec3 axis = Vec3::UnitZ();     // revolute axis, local frame
  double lo = -3.14, hi = 3.14;  // rad
};

struct EndEffector {
  std::string name;
  int parent_joint = -1;
  Iso3 offset = Iso3::Identity();
};

struct CollisionSphere {
  std::string link;  // joint name the sphere rides on
  int joint = -1;
  Vec3 center = Vec3::Zero();  // offset in the joint frame
  double radius = 0.01;
};

using JointVector = Eigen::Matrix<double, kNumJoints, 1>;

class KinematicChain {
 public:
  std::vector<Joint> joints;
  std::vector<EndEffector> effectors;  // [0] wrist, [1..5] fingertips
  std::vector<CollisionSphere> spheres;

  int joint_index(const std::string& name) const {
    for (std::size_t i = 0; i < joints.size(); ++i)
      if (joints[i].name == name) return static_cast<int>(i);
    throw ConfigError("unknown joint: " + name);
  }

  int effector_index(const std::string& name) const {
    for (std::size_t i = 0; i < effectors.size(); ++i)
      if (effectors[i].name == name) return static_cast<int>(i);
    throw ConfigError("unknown end effector: " + name);
  }

  JointVector clamp(const JointVector& q) const {
    JointVector out = q;
    for (int i = 0; i < kNumJoints; ++i)
      out[i] = std::clamp(q[i], joints[i].lo, joints[i].hi);
    return out;
  }

  bool within_limits(const JointVector& q, double tol = 1e-9) const {
    for (int i = 0; i < kNumJoints; ++i)
      if (q[i] < joints[i].lo - tol || q[i] > joints[i].hi + tol) return false;
    return true;
  }

  // World transform of every joint frame (after its own rotation).
  std::vector<Iso3> joint_frames(const JointVector& q) const {
    std::vector<Iso3> frames(joints.size());
    for (std::size_t i = 0; i < joints.size(); ++i) {
      const Iso3 parent =
          joints[i].parent < 0 ? Iso3::Identity() : frames[joints[i].parent];
      frames[i] = parent * joints[i].origin *
                  Iso3(Eigen::AngleAxisd(q[static_cast<int>(i)],
                                         joints[i].axis.normalized()));
    }
    return frames;
  }

  std::vector<Iso3> forward_kinematics(const JointVector& q,
                                       bool check_limits = true) const {
    if (check_limits && !within_limits(q))
      throw LimitViolationError("joint vector outside limits");
    const auto frames = joint_frames(q);
    std::vector<Iso3> out;
    out.reserve(effectors.size());
    for (const auto& e : effectors) out.push_back(frames[e.parent_joint] * e.offset);
    return out;
  }

  // true iff joint j is on the chain from base to joint `leaf` (inclusive)
  bool is_ancestor(int j, int leaf) const {
    for (int k = leaf; k >= 0; k = joints[k].parent)
      if (k == j) return true;
    return false;
  }
};

// Config IO -------------------------------------------------------------

namespace detail {

inline Vec3 jvec3(const nlohmann::json& j) {
  return Vec3(j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>());
}

inline Iso3 jxform(const nlohmann::json& j) {
  Iso3 t = Iso3::Identity();
  if (j.contains("xyz")) t.translation() = jvec3(j.at("xyz"));
  if (j.contains("rpy")) {
    const Vec3 rpy = jvec3(j.at("rpy"));
    t.linear() = (Eigen::AngleAxisd(rpy.z(), Vec3::UnitZ()) *
                  Eigen::AngleAxisd(rpy.y(), Vec3::UnitY()) *
                  Eigen::AngleAxisd(rpy.x(), Vec3::UnitX()))
                     .toRotationMatrix();
  }
  return t;
}

}  // namespace detail

inline KinematicChain load_chain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open chain file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("chain parse error in " + path + ": " + e.what());
  }
  KinematicChain c;
  for (const auto& jj : j.at("joints")) {
    Joint joint;
    joint.name = jj.at("name").get<std::string>();
    const std::string parent = jj.at("parent").get<std::string>();
    joint.parent = parent == "base" ? -1 : c.joint_index(parent);
    joint.origin = detail::jxform(jj.at("origin"));
    joint.axis = detail::jvec3(jj.at("axis"));
    joint.lo = jj.at("limits").at(0).get<double>();
    joint.hi = jj.at("limits").at(1).get<double>();
    if (joint.lo >= joint.hi)
      throw ConfigError("joint " + joint.name + ": limits must satisfy lo < hi");
    c.joints.push_back(joint);
  }
  if (c.joints.size() != kNumJoints)
    throw ConfigError("chain must have exactly 13 actuated joints");
  for (const auto& je : j.at("end_effectors")) {
    EndEffector e;
    e.name = je.at("name").get<std::string>();
    e.parent_joint = c.joint_index(je.at("parent").get<std::string>());
    e.offset = detail::jxform(je.at("offset"));
    c.effectors.push_back(e);
  }
  if (c.effectors.size() != 6 || c.effectors[0].name != "wrist")
    throw ConfigError("chain needs wrist + 5 fingertip end effectors");
  if (j.contains("collision_spheres")) {
    for (const auto& js : j.at("collision_spheres")) {
      CollisionSphere s;
      s.link = js.at("link").get<std::string>();
      s.joint = c.joint_index(s.link);
      s.center = detail::jvec3(js.at("center"));
      s.radius = js.at("radius").get<double>();
      c.spheres.push_back(s);
    }
  }
  return c;
}

// Built-in chain matching configs/chain.json: a 7-DoF serial arm with
// alternating z/y axes and a 6-DoF hand (2-DoF thumb + 4 single-DoF
// fingers) hanging off the last arm joint.
inline KinematicChain default_chain() {
  KinematicChain c;
  auto add = [&](const std::string& name, int parent, const Vec3& xyz,
                 const Vec3& axis, double lo, double hi) {
    Joint jt;
    jt.name = name;
    jt.parent = parent;
    jt.origin.translation() = xyz;
    jt.axis = axis;
    jt.lo = lo;
    jt.hi = hi;
    c.joints.push_back(jt);
    return static_cast<int>(c.joints.size()) - 1;
  };
  const Vec3 X = Vec3::UnitX(), Y = Vec3::UnitY(), Z = Vec3::UnitZ();
  const int a1 = add("arm_1", -1, {0, 0, 0.333}, Z, -2.9, 2.9);
  const int a2 = add("arm_2", a1, {0, 0, 0}, Y, -1.76, 1.76);
  const int a3 = add("arm_3", a2, {0, 0, 0.316}, Z, -2.9, 2.9);
  const int a4 = add("arm_4", a3, {0.0825, 0, 0}, Y, -2.2, 2.2);
  const int a5 = add("arm_5", a4, {-0.0825, 0, 0.384}, Z, -2.9, 2.9);
  const int a6 = add("arm_6", a5, {0, 0, 0}, Y, -2.0, 2.0);
  const int a7 = add("arm_7", a6, {0.088, 0, 0.107}, Z, -2.9, 2.9);
  const int tc = add("thumb_cmc", a7, {-0.050, 0, 0.100}, Z, -1.0, 1.0);
  const int tm = add("thumb_mcp", tc, {-0.020, 0, 0.030}, X, -0.2, 1.6);
  const int fi = add("index_mcp", a7, {-0.025, 0, 0.160}, X, -0.2, 1.6);
  const int fm = add("middle_mcp", a7, {0.000, 0, 0.165}, X, -0.2, 1.6);
  const int fr = add("ring_mcp", a7, {0.025, 0, 0.160}, X, -0.2, 1.6);
  const int fp = add("pinky_mcp", a7, {0.050, 0, 0.145}, X, -0.2, 1.6);

  auto tip = [&](const std::string& name, int parent, const Vec3& xyz) {
    EndEffector e;
    e.name = name;
    e.parent_joint = parent;
    e.offset.translation() = xyz;
    c.effectors.push_back(e);
  };
  tip("wrist", a7, {0, 0, 0.060});
  tip("thumb_tip", tm, {0, 0, 0.045});
  tip("index_tip", fi, {0, 0, 0.050});
  tip("middle_tip", fm, {0, 0, 0.050});
  tip("ring_tip", fr, {0, 0, 0.050});
  tip("pinky_tip", fp, {0, 0, 0.050});

  auto sphere = [&](const std::string& link, const Vec3& center, double r) {
    CollisionSphere s;
    s.link = link;
    s.joint = c.joint_index(link);
    s.center = center;
    s.radius = r;
    c.spheres.push_back(s);
  };
  sphere("arm_7", {0, 0, 0.060}, 0.050);  // wrist
  sphere("thumb_mcp", {0, 0, 0.045}, 0.012);
  sphere("index_mcp", {0, 0, 0.050}, 0.012);
  sphere("middle_mcp", {0, 0, 0.050}, 0.012);
  sphere("ring_mcp", {0, 0, 0.050}, 0.012);
  sphere("pinky_mcp", {0, 0, 0.050}, 0.012);
  return c;
}

inline nlohmann::json chain_to_json(const KinematicChain& c) {
  nlohmann::json j;
  j["joints"] = nlohmann::json::array();
  for (const auto& jt : c.joints) {
    const Vec3 t = jt.origin.translation();
    j["joints"].push_back(
        {{"name", jt.name},
         {"parent", jt.parent < 0 ? "base" : c.joints[jt.parent].name},
         {"origin", {{"xyz", {t.x(), t.y(), t.z()}}}},
         {"axis", {jt.axis.x(), jt.axis.y(), jt.axis.z()}},
         {"limits", {jt.lo, jt.hi}}});
  }
  j["end_effectors"] = nlohmann::json::array();
  for (const auto& e : c.effectors) {
    const Vec3 t = e.offset.translation();
    j["end_effectors"].push_back(
        {{"name", e.name},
         {"parent", c.joints[e.parent_joint].name},
         {"offset", {{"xyz", {t.x(), t.y(), t.z()}}}}});
  }
  j["collision_spheres"] = nlohmann::json::array();
  for (const auto& s : c.spheres)
    j["collision_spheres"].push_back(
        {{"link", s.link},
         {"center", {s.center.x(), s.center.y(), s.center.z()}},
         {"radius", s.radius}});
  return j;
}

}  // namespace osmo::retarget
